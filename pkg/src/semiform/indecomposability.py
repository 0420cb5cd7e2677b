"""Predicting the components of tensor products from cycle parity, with oracle cross-checks."""
from __future__ import annotations

from dataclasses import dataclass

from .decomposition import BasePartition, base_graph_bilinear, decompose
from .forms import (GramMatrix, QuadraticScheme, is_alternate, is_balanced, is_diagonally_zero,
                    norm_form, quasiminimal_reduce)
from .graphs import BaseGraph, ParityReport, parity_report
from .isometry import PreconditionError
from .semiring import SemiringMismatch
from .tensor import tensor_bilinear

__all__ = ["TensorPrediction", "CrossCheck", "parity_report", "predict_bilinear_tensor",
           "predict_quadratic_tensor", "full_tensor_analysis", "oracle_crosscheck", "ParityReport"]


@dataclass(frozen=True)
class TensorPrediction:
    count: int
    blocks: tuple[tuple[int, ...], ...]
    reason: str

    def partition(self, n: int) -> BasePartition:
        return BasePartition(n, self.blocks)


def _entire_antiring(ring):
    if not (ring.is_antiring and ring.is_entire):
        raise PreconditionError(f"{ring.name} is not an entire antiring")


def _is_zero_rank_one(f) -> bool:
    if f.rank != 1:
        return False
    z = f.ring.zero
    return (f.rows[0][0] if isinstance(f, GramMatrix) else f.diag[0]) == z


def _indecomposable(f, what):
    if f.rank == 0 or len(decompose(f)) != 1:
        raise PreconditionError(f"{what} is not indecomposable")


def _singletons(n, reason):
    return TensorPrediction(n, tuple((p,) for p in range(n)), reason)


def _whole(n, reason):
    return TensorPrediction(1, (tuple(range(n)),), reason)


def predict_bilinear_tensor(b1: GramMatrix, b2: GramMatrix) -> TensorPrediction:
    if b1.ring != b2.ring:
        raise SemiringMismatch("forms over different semirings")
    _entire_antiring(b1.ring)
    n, m = b1.rank, b2.rank
    if _is_zero_rank_one(b1) or _is_zero_rank_one(b2):
        return _singletons(n * m, "a factor is <0>: the tensor is zero")
    _indecomposable(b1, "b1")
    _indecomposable(b2, "b2")
    if not is_alternate(b1) or not is_alternate(b2):
        return _whole(n * m, "a factor is not alternate")
    r1 = parity_report(base_graph_bilinear(b1))
    r2 = parity_report(base_graph_bilinear(b2))
    if not r1.bipartite or not r2.bipartite:
        return _whole(n * m, "a factor has an odd cycle")
    blocks = ([], [])
    for i in range(n):
        for k in range(m):
            blocks[r1.colour(i) ^ r2.colour(k)].append(i * m + k)
    return TensorPrediction(2, tuple(tuple(b) for b in blocks), "both factors alternate with only even cycles")


def predict_quadratic_tensor(gamma: GramMatrix, q: QuadraticScheme, b: GramMatrix) -> TensorPrediction:
    ring = gamma.ring
    if q.ring != ring or b.ring != ring:
        raise SemiringMismatch("forms over different semirings")
    _entire_antiring(ring)
    if not ring.has_nql:
        raise PreconditionError(f"{ring.name} does not have NQL")
    if not is_balanced(q, b):
        raise PreconditionError("b is not a balanced companion of q")
    n, m = gamma.rank, q.rank
    if _is_zero_rank_one(gamma) or _is_zero_rank_one(q):
        return _singletons(n * m, "a factor is zero of rank one: the tensor is zero")
    _indecomposable(norm_form(gamma), "n(gamma)")
    _indecomposable(q, "q")
    if (is_alternate(gamma) and is_diagonally_zero(q)
            and parity_report(base_graph_bilinear(gamma)).bipartite
            and parity_report(base_graph_bilinear(b)).bipartite):
        bf = quasiminimal_reduce(q, b, validate=False)
        p = decompose(tensor_bilinear(gamma, bf))
        return TensorPrediction(len(p), p.blocks,
                                "gamma alternate, q diagonally zero, only even cycles")
    return _whole(n * m, "not the exceptional even-cycle case")


def full_tensor_analysis(gamma: GramMatrix, q: QuadraticScheme, b: GramMatrix) -> list[TensorPrediction]:
    """One prediction per component of (U, n(gamma)), in global product indices."""
    m = q.rank
    out = []
    for block in decompose(norm_form(gamma)).blocks:
        local = predict_quadratic_tensor(gamma.restrict(block), q, b)
        blocks = tuple(tuple(block[p // m] * m + p % m for p in blk) for blk in local.blocks)
        out.append(TensorPrediction(local.count, blocks, local.reason))
    return out


@dataclass(frozen=True)
class CrossCheck:
    match: bool
    predicted: BasePartition
    actual: BasePartition


def oracle_crosscheck(prediction, actual_form) -> CrossCheck:
    preds = prediction if isinstance(prediction, (list, tuple)) else [prediction]
    n = actual_form.rank
    predicted = BasePartition(n, tuple(b for p in preds for b in p.blocks))
    actual = decompose(actual_form)
    return CrossCheck(predicted == actual, predicted, actual)
