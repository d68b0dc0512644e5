"""Push K past the contraction guarantee and record how the observed rate behaves."""

import argparse
import math

from pentabeam.assembly import BeamProblem
from pentabeam.fixed_point import IterationConfig, iterate
from pentabeam.norms import lipschitz

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--bc", default="cc")
ap.add_argument("--n", type=int, default=99)
ap.add_argument("--k", type=float, nargs="+", default=[128, 256, 386, 512, 700])
args = ap.parse_args()

print("K        L_inf    rate     iters  converged")
for K in args.k:
    problem = BeamProblem(args.bc, args.n, K)
    L, _ = lipschitz(problem, math.inf)
    trace = iterate(problem, IterationConfig(max_iters=2000))
    print(f"{K:<8g} {L:<8.4f} {trace.observed_max_rate:<8.4f} {trace.iterations:<6d} {trace.converged}")
