"""DOT golden cases.  Run as a script to rewrite tests/golden/*.dot."""
from pathlib import Path

from mvbool import (
    binarise,
    build_async,
    build_async_admissible,
    example,
    export_dot,
    extend_via_psi,
    global_graph,
    local_graph,
    partial_conversion,
    stepwise,
)

GOLDEN_DIR = Path(__file__).parent / "golden"


def _ex(name):
    return example(name).map


CASES = {
    "fig1_global": lambda: export_dot(global_graph(_ex("fig1"))),
    "fig1_explicit_global": lambda: export_dot(global_graph(example("fig1").conversion)),
    "fig1_async": lambda: export_dot(build_async(_ex("fig1"))),
    "richard_psi_global": lambda: export_dot(global_graph(extend_via_psi(_ex("richard_stepwise")))),
    "richard_admissible_async": lambda: export_dot(
        build_async_admissible(partial_conversion(_ex("richard_stepwise"))), rankdir="LR"
    ),
    "ex1_psi_local_1010": lambda: export_dot(
        local_graph(extend_via_psi(_ex("ex1_pos_not_preserved")), (1, 0, 1, 0))
    ),
    "two_minus_x_async": lambda: export_dot(build_async(_ex("two_minus_x"))),
    "two_minus_x_stepwise_psi_async": lambda: export_dot(
        build_async(extend_via_psi(stepwise(_ex("two_minus_x"))))
    ),
    "two_minus_x_binarise_async": lambda: export_dot(build_async(binarise(_ex("two_minus_x")))),
}


def golden_path(name):
    return GOLDEN_DIR / f"{name}.dot"


if __name__ == "__main__":
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, make in CASES.items():
        golden_path(name).write_text(make())
        print(f"wrote {golden_path(name)}")
