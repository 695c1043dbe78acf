"""Property deciders and their witnesses on the bundled corpus."""

import json

from spbw import corpus
from spbw.cli import parse_instance
from spbw.properties import (
    idempotent_stability,
    is_delta_compatible,
    is_linearly_skew_armendariz,
    is_pp,
    is_reduced,
    is_sigma_compatible,
    replay,
)


def line(name, verdict):
    mark = {"holds": "+", "fails": "-", "holds_up_to_bound": "~"}[verdict.status]
    txt = f"  [{mark}] {name}"
    if verdict.witness:
        txt += "  witness " + json.dumps(verdict.witness)
    print(txt)


def main():
    for name in corpus.names():
        inst = parse_instance(corpus.load(name))
        M, P = inst.module, inst.presentation
        print(f"{name} (ring {inst.ring.label}, module order {M.order})")
        line("reduced", is_reduced(M))
        line("sigma compatible", is_sigma_compatible(M, P))
        line("delta compatible", is_delta_compatible(M, P))
        line("idempotent stability", idempotent_stability(P))
        line("pp", is_pp(M))
        lin = is_linearly_skew_armendariz(M, P)
        line("linearly skew-armendariz", lin)
        if lin.status == "fails":
            # failing verdicts are replayable from their serialized form
            print("      replay confirms:", replay(M, P, lin))
        print()


if __name__ == "__main__":
    main()
