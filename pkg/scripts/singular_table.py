"""Tabulate omega on indecomposable surjections and the resulting singular parameters.

    python scripts/singular_table.py --backend setop --max-size 5
    python scripts/singular_table.py --backend vect --q 3 --max-size 2
"""
import argparse
from dataclasses import dataclass

from tenv.backend import make_backend
from tenv.degree import natural_degree
from tenv.radical import indecomposable_surjections, nonsingularity_verdict, omega
from tenv.scalars import fmt


@dataclass(frozen=True)
class Config:
    backend: str = "setop"
    q: int = 2
    max_size: int = 4


def run(cfg):
    B = make_backend(cfg.backend, cfg.q)
    d = natural_degree(B)
    print("source\tindecomposables\tomega values")
    for x in range(1, cfg.max_size + 1):
        ind = indecomposable_surjections(B, x)
        values = sorted({fmt(omega(B, e, d).value) for e in ind})
        print(f"{x}\t{len(ind)}\t{', '.join(values)}")
    v = nonsingularity_verdict(B, d, cfg.max_size)
    print("singular parameters:", ", ".join(fmt(p) for p in v.singular_params))
    return v


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--backend", choices=["setop", "vect"], default=Config.backend)
    p.add_argument("--q", type=int, default=Config.q)
    p.add_argument("--max-size", type=int, default=Config.max_size)
    a = p.parse_args()
    run(Config(a.backend, a.q, a.max_size))


if __name__ == "__main__":
    main()
