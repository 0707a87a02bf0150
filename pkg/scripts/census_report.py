"""Compare block counts of End([n]) modulo the radical with the class-count census.

Runs symbolically and at each requested rational parameter, reporting the
radical dimension, block sizes and the census prediction.

    python scripts/census_report.py --max-n 2 --params 7/2 3 2 1
"""
import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from tenv.backend import make_backend
from tenv.degree import natural_degree
from tenv.radical import simple_census
from tenv.scalars import fmt


@dataclass(frozen=True)
class Config:
    backend: str = "setop"
    q: int = 2
    max_n: int = 2
    params: tuple = field(default=(Fraction(7, 2), Fraction(3), Fraction(2)))


def run(cfg):
    B = make_backend(cfg.backend, cfg.q)
    d = natural_degree(B)
    print("n\tt\tradical\tblocks\tcensus\tmatch")
    rows = []
    for n in range(1, cfg.max_n + 1):
        for delta in [d] + [d.at(t) for t in cfg.params]:
            rep = simple_census(B, n, delta)
            t = "t" if delta.symbolic else fmt(delta.t)
            row = (n, t, rep.blocks.radical_dim, rep.blocks.blocks, rep.predicted, rep.match)
            rows.append(row)
            print("\t".join(str(c) for c in row))
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--backend", choices=["setop", "vect"], default=Config.backend)
    p.add_argument("--q", type=int, default=Config.q)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--params", nargs="*", type=Fraction, default=list(Config().params))
    a = p.parse_args()
    run(Config(a.backend, a.q, a.max_n, tuple(a.params)))


if __name__ == "__main__":
    main()
