"""
Cartan forms, the phi+- transport maps and the invariance checks.

Every check returns a :class:`~ggk.report.Report`; it describes the model
and never assumes the hypotheses it tests.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact import (LinearAlgebraError, det, dot, inverse, is_positive_definite, matmul,
                    matvec, transpose)
from .model import ModelError
from .report import Report


class FormsError(ValueError):
    pass


@dataclass(frozen=True)
class CartanForm:
    reference: str
    matrix: tuple
    ordering: tuple

    def __post_init__(self):
        if any(self.matrix[i][i] < 1 for i in range(len(self.matrix))):
            raise FormsError("Cartan matrix needs positive diagonal entries")


def cartan_form(model, ref):
    order = model.maximal_rigid[ref]
    return CartanForm(ref, tuple(tuple(model.hom(a, b) for b in order) for a in order), order)


def pairing(C, xi, eta):
    M = C.matrix if isinstance(C, CartanForm) else C
    if len(xi) != len(M) or len(eta) != len(M):
        raise FormsError("dimension mismatch: form of size %d, vectors of length %d and %d"
                         % (len(M), len(xi), len(eta)))
    return dot(xi, matvec(M, eta))


@dataclass(frozen=True)
class PhiPair:
    mutated_index: int
    b_plus_class: tuple
    b_minus_class: tuple


def apply_phi(pair, xi):
    """phi+ if the mutated coefficient is >= 0, phi- otherwise (they agree at 0)."""
    i = pair.mutated_index
    a = xi[i]
    cls = pair.b_plus_class if a >= 0 else pair.b_minus_class
    return tuple((0 if j == i else x) + a * c for j, (x, c) in enumerate(zip(xi, cls)))


def phi_pair(model, exchange):
    """PhiPair of one exchange record, in the bases of the two summand orders."""
    src = model.maximal_rigid[exchange.source]
    tgt = model.maximal_rigid[exchange.target]
    i = src.index(exchange.replaced)
    (star,) = set(tgt) - set(src)
    # the target basis keeps the source's positions, with the new summand in slot i
    basis = [star if s == exchange.replaced else s for s in src]

    def cls(middle):
        v = Counter(middle)
        v[star] -= 1
        return tuple(v.get(s, 0) for s in basis)

    return PhiPair(i, cls(exchange.b_plus), cls(exchange.b_minus)), tuple(basis)


# -- checks ------------------------------------------------------------------

def _model_name(model):
    return model.name or None


def check_invariance(model):
    if model.hom_dims is None:
        raise ModelError("invariance needs a Hom table", "/hom_dims")
    labels = list(model.maximal_rigid)
    objs = list(model.indecomposables)
    forms = {l: cartan_form(model, l).matrix for l in labels}
    witnesses = []
    pairs = 0
    for l, m in combinations(labels, 2):
        pairs += 1
        il, im = model.indices_wrt(l), model.indices_wrt(m)
        for n1 in objs:
            bad = next(((n1, n2) for n2 in objs
                        if pairing(forms[l], il[n1], il[n2]) != pairing(forms[m], im[n1], im[n2])),
                       None)
            if bad:
                n1, n2 = bad
                witnesses.append({"references": [l, m], "objects": [n1, n2],
                                  "values": [int(pairing(forms[l], il[n1], il[n2])),
                                             int(pairing(forms[m], im[n1], im[n2]))]})
                break
    return Report("invariance", witnesses, _model_name(model), {"reference_pairs": pairs})


def check_antisymmetry(model, sigma_map=None):
    sigma = sigma_map if sigma_map is not None else model.sigma
    if sigma is None:
        raise ModelError("antisymmetry needs a suspension map", "/sigma")
    objs = set(model.indecomposables)
    if set(sigma) != objs or set(sigma.values()) != objs:
        raise FormsError("sigma is not a permutation of the indecomposable labels")
    witnesses = []
    for ref in model.maximal_rigid:
        idx = model.indices_wrt(ref)
        for n in model.indecomposables:
            expected = tuple(-x for x in idx[n])
            found = idx[sigma[n]]
            if found != expected:
                witnesses.append({"reference": ref, "object": n, "sigma": sigma[n],
                                  "expected": list(expected), "found": list(found)})
    return Report("antisymmetry", witnesses, _model_name(model))


def check_theorem_b_forms(model):
    if model.hom_dims is None:
        raise ModelError("form checks need a Hom table", "/hom_dims")
    witnesses = []
    dets = {}
    for ref in model.maximal_rigid:
        C = cartan_form(model, ref).matrix
        d = det(C)
        dets[ref] = int(d) if d.denominator == 1 else str(d)
        if d == 0:
            witnesses.append({"reference": ref, "kind": "degenerate", "matrix": [list(r) for r in C]})
        S = tuple(tuple(C[i][j] + C[j][i] for j in range(len(C))) for i in range(len(C)))
        if not is_positive_definite(S):
            witnesses.append({"reference": ref, "kind": "symmetrization not positive definite",
                              "symmetrization": [list(r) for r in S]})
    if len(set(dets.values())) > 1:
        witnesses.append({"kind": "determinant depends on the reference", "determinants": dets})
    return Report("forms", witnesses, _model_name(model), {"determinants": dets})


def _global_basis(model, ref):
    return transpose([model.indecomposables[s] for s in model.maximal_rigid[ref]])


def transport_matrix(model, l, m):
    """
    P with columns index_l(m_j), by basis change L^-1 M from the stored
    global indices.  Raises if either basis is singular.
    """
    L, M = _global_basis(model, l), _global_basis(model, m)
    try:
        P = matmul(inverse(L), M)
    except LinearAlgebraError:
        raise FormsError("summands of %r do not form a basis" % l) from None
    if det(M) == 0:
        raise FormsError("summands of %r do not form a basis" % m)
    return tuple(tuple(int(x) if Fraction(x).denominator == 1 else x for x in row) for row in P)


def transport_matrix_phi(model, l, m):
    """The same matrix from phi-transport: columns are index_l of m's summands."""
    idx = model.indices_wrt(l)
    return transpose([idx[s] for s in model.maximal_rigid[m]])


def check_congruence(model, l, m):
    if model.hom_dims is None:
        raise ModelError("congruence needs a Hom table", "/hom_dims")
    P = transport_matrix(model, l, m)
    Cl, Cm = cartan_form(model, l).matrix, cartan_form(model, m).matrix
    PtCP = matmul(matmul(transpose(P), Cl), P)
    residual = [[int(Cm[i][j] - PtCP[i][j]) for j in range(len(P))] for i in range(len(P))]
    d = det(P)
    witnesses = []
    if any(any(r) for r in residual):
        witnesses.append({"kind": "not congruent", "references": [l, m], "residual": residual})
    if abs(d) != 1:
        witnesses.append({"kind": "transport determinant", "det": str(d)})
    details = {"P": [[int(x) for x in r] for r in P], "det": int(d),
               "phi_agrees": tuple(map(tuple, P)) == tuple(map(tuple, transport_matrix_phi(model, l, m)))}
    return Report("congruence", witnesses, _model_name(model), details)


def check_all_congruences(model):
    """check_congruence for every ordered pair of maximal rigids; witnesses are merged."""
    witnesses = []
    for l in model.maximal_rigid:
        for m in model.maximal_rigid:
            if l != m:
                witnesses += check_congruence(model, l, m).witnesses
    return Report("congruence", witnesses, _model_name(model))


def check_middle_terms(model):
    """Whether the two exchange middle terms agree as multisets for every mutation."""
    if model.exchange is None:
        raise ModelError("model has no exchange data", "/exchange")
    witnesses = [{"from": e.source, "to": e.target, "b_plus": list(e.b_plus), "b_minus": list(e.b_minus)}
                 for e in model.exchange if Counter(e.b_plus) != Counter(e.b_minus)]
    return Report("middle-terms", witnesses, _model_name(model))
