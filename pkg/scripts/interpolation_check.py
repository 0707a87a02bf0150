"""Check the uniform functor X^(-) against the envelope at t = |X|.

For each n it compares dim Hom([n], [n]) minus the radical with the number of
Aut(X)-orbits, and verifies that specialized matrices compose correctly.

    python scripts/interpolation_check.py --X 3 --max-n 2
"""
import argparse
from dataclasses import dataclass

from tenv.backend import make_backend
from tenv.degree import natural_degree
from tenv.specialization import UniformFunctor, functoriality_check, interpolation_dim_check


@dataclass(frozen=True)
class Config:
    backend: str = "setop"
    q: int = 2
    X: int = 3
    max_n: int = 2


def run(cfg):
    B = make_backend(cfg.backend, cfg.q)
    d = natural_degree(B)
    P = UniformFunctor(B, cfg.X)
    t = P.adapted_parameter()
    print(f"adapted parameter t = {t}")
    print("n\thom\tradical\torbits\tmatch")
    reports = []
    for n in range(1, cfg.max_n + 1):
        rep = interpolation_dim_check(P, n, n, d)
        reports.append(rep)
        print(f"{n}\t{rep.hom_dim}\t{rep.radical_dim}\t{rep.orbit_count}\t{rep.match}")
    func = functoriality_check(P, d.at(t), objects=tuple(range(1, cfg.max_n + 1)))
    print(f"functoriality at t = {t}: {'pass' if func.passed else 'FAIL'} {func.checked}")
    return reports, func


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--backend", choices=["setop", "vect"], default=Config.backend)
    p.add_argument("--q", type=int, default=Config.q)
    p.add_argument("--X", type=int, default=Config.X)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    a = p.parse_args()
    run(Config(a.backend, a.q, a.X, a.max_n))


if __name__ == "__main__":
    main()
