"""Local cloning of group-shifted bipartite states.

A family is ``|psi_f> = sum_g sqrt(lambda_g) e^{i theta_{f,g}} |g>_A |fg>_B`` for a
finite group G with |G| = D. The protocol with a maximally entangled blank
is simulated densely on the four registers A, B, a, b.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .entangle import entropy, majorized_by
from .pauli import DENSE_CAP, check_dense

TOL = 1e-8


class GroupError(ValueError):
    pass


class ProtocolError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """Cayley table: ``table[g][h]`` is the index of gh."""

    table: tuple[tuple[int, ...], ...]
    name: str = "custom"

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        D = t.shape[0]
        if t.ndim != 2 or t.shape != (D, D) or D == 0:
            raise GroupError("Cayley table must be square and nonempty")
        if t.min() < 0 or t.max() >= D:
            raise GroupError("Cayley table entries out of range")
        if any(len(set(row)) != D for row in t) or any(len(set(col)) != D for col in t.T):
            raise GroupError("Cayley table is not a Latin square")
        ids = [e for e in range(D) if np.array_equal(t[e], np.arange(D)) and np.array_equal(t[:, e], np.arange(D))]
        if not ids:
            raise GroupError("no identity element")
        # associativity: (gh)k == g(hk) for all triples
        if not np.array_equal(t[t], _right_assoc(t)):
            raise GroupError("table is not associative")
        object.__setattr__(self, "table", tuple(tuple(int(v) for v in row) for row in t))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        t = np.asarray(self.table)
        return int(next(e for e in range(self.order) if np.array_equal(t[e], np.arange(self.order))))

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        e = self.identity
        return next(h for h in range(self.order) if self.table[g][h] == e)

    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)


def _right_assoc(t: np.ndarray) -> np.ndarray:
    # out[g, h, k] = g(hk)
    D = t.shape[0]
    out = np.empty((D, D, D), dtype=np.int64)
    for g in range(D):
        out[g] = t[g][t]
    return out


def cyclic_group(D: int) -> FiniteGroup:
    g = np.arange(D)
    return FiniteGroup(tuple(map(tuple, (g[:, None] + g[None, :]) % D)), f"Z{D}")


def s3_group() -> FiniteGroup:
    perms = sorted(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    return FiniteGroup(tuple(map(tuple, table)), "S3")


def builtin_group(name: str, D: int | None = None) -> FiniteGroup:
    if name.lower() == "s3":
        return s3_group()
    if name.lower() in ("cyclic", "z"):
        if D is None:
            raise GroupError("cyclic group needs an order")
        return cyclic_group(D)
    raise GroupError(f"unknown group {name}")


def parse_group(text: str) -> FiniteGroup:
    rows = [ln.split("#")[0].split() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise GroupError("empty group file")
    D = int(rows[0][0])
    if len(rows) != D + 1:
        raise GroupError(f"expected {D} table rows, found {len(rows) - 1}")
    return FiniteGroup(tuple(tuple(int(v) for v in r) for r in rows[1:]))


def read_group(path) -> FiniteGroup:
    return parse_group(Path(path).read_text())


def is_isomorphic(a: FiniteGroup, b: FiniteGroup) -> bool:
    """Brute force over bijections fixing the identity; fine for the small orders used here."""
    if a.order != b.order:
        return False
    ta, tb = a.array(), b.array()
    ea, eb = a.identity, b.identity
    rest_a = [g for g in range(a.order) if g != ea]
    rest_b = [g for g in range(b.order) if g != eb]
    for perm in itertools.permutations(rest_b):
        phi = np.empty(a.order, dtype=np.int64)
        phi[ea] = eb
        phi[rest_a] = perm
        if np.array_equal(phi[ta], tb[phi[:, None], phi[None, :]]):
            return True
    return False


# --- families ----------------------------------------------------------------

@dataclass(frozen=True)
class GroupShiftedFamily:
    group: FiniteGroup
    lam: tuple[float, ...]
    phases: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=float)
        if lam.shape != (self.group.order,):
            raise ValueError("need one coefficient per group element")
        if np.any(lam < 0) or abs(lam.sum() - 1) > 1e-10:
            raise ValueError("coefficients must be nonnegative and sum to 1")
        object.__setattr__(self, "lam", tuple(float(v) for v in lam))
        if self.phases is not None:
            ph = np.asarray(self.phases, dtype=float)
            if ph.shape != (self.D, self.D):
                raise ValueError("phases must be a D x D array indexed (f, g)")
            object.__setattr__(self, "phases", ph)

    @property
    def D(self) -> int:
        return self.group.order

    def has_phases(self) -> bool:
        return self.phases is not None and bool(np.any(np.abs(np.mod(self.phases + np.pi, 2 * np.pi) - np.pi) > 1e-12))

    def state_matrix(self, f: int) -> np.ndarray:
        """Amplitudes psi_f[a, b] of |a>_A |b>_B."""
        D = self.D
        out = np.zeros((D, D), dtype=complex)
        for g in range(D):
            ph = 0.0 if self.phases is None else self.phases[f, g]
            out[g, self.group.mul(f, g)] = np.sqrt(self.lam[g]) * np.exp(1j * ph)
        return out

    def states(self) -> list[np.ndarray]:
        return [self.state_matrix(f) for f in range(self.D)]


def parse_family(text: str, group: FiniteGroup) -> GroupShiftedFamily:
    lam = np.zeros(group.order)
    seen = set()
    for i, ln in enumerate(text.splitlines(), 1):
        ln = ln.split("#")[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"line {i}: expected 'g lambda'")
        g, v = int(parts[0]), float(parts[1])
        if not 0 <= g < group.order or g in seen:
            raise ValueError(f"line {i}: bad or repeated group element {g}")
        seen.add(g)
        lam[g] = v
    return GroupShiftedFamily(group, tuple(lam))


# --- protocol ----------------------------------------------------------------

def _controlled_group(state: np.ndarray, t: np.ndarray, ctrl: int, targ: int) -> np.ndarray:
    """sum_g |g><g| (x) P_g with P_g|h> = |gh>, control axis ctrl, target axis targ."""
    D = t.shape[0]
    out = np.empty_like(state)
    for g in range(D):
        src = [slice(None)] * 4
        src[ctrl] = g
        block = state[tuple(src)]
        ax = targ if targ < ctrl else targ - 1
        moved = np.empty_like(block)
        idx = [slice(None)] * 3
        for h in range(D):
            idx_src = list(idx)
            idx_src[ax] = h
            idx_dst = list(idx)
            idx_dst[ax] = int(t[g, h])
            moved[tuple(idx_dst)] = block[tuple(idx_src)]
        out[tuple(src)] = moved
    return out


def measurement_operators(family: GroupShiftedFamily) -> list[np.ndarray]:
    """M_r = sum_h sqrt(lambda_{hr}) |h><h|."""
    t = family.group.array()
    lam = np.array(family.lam)
    return [np.diag(np.sqrt(lam[t[:, r]])) for r in range(family.D)]


def correction(family: GroupShiftedFamily, r: int) -> np.ndarray:
    """Q_r = sum_h |hr><h|."""
    D = family.D
    t = family.group.array()
    Q = np.zeros((D, D))
    Q[t[:, r], np.arange(D)] = 1
    return Q


@dataclass
class CloneOutcome:
    f: int
    r: int | None
    probability: float
    fidelity: float

    def to_dict(self) -> dict:
        return {"f": self.f, "r": self.r, "probability": self.probability, "fidelity": self.fidelity}


@dataclass
class CloneReport:
    outcomes: list[CloneOutcome]
    completeness_error: float
    measured: bool

    @property
    def min_fidelity(self) -> float:
        return min(o.fidelity for o in self.outcomes)

    def to_dict(self) -> dict:
        return {
            "measured": self.measured,
            "completeness_error": self.completeness_error,
            "min_fidelity": self.min_fidelity,
            "outcomes": [o.to_dict() for o in self.outcomes],
        }


def _apply_local(state: np.ndarray, op: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(op, state, axes=([1], [axis])), 0, axis)


def simulate_clone_protocol(family: GroupShiftedFamily, measure: bool = True, cap: int = DENSE_CAP) -> CloneReport:
    """Run the protocol for every input f; with ``measure=False`` steps 2-3 are skipped."""
    if family.has_phases():
        raise ProtocolError("protocol not guaranteed for states with phases")
    D = family.D
    check_dense(D, 4, cap)
    t = family.group.array()
    Ms = measurement_operators(family)
    comp = float(np.abs(sum(M.conj().T @ M for M in Ms) - np.eye(D)).max())
    blank = np.eye(D, dtype=complex) / np.sqrt(D)
    outcomes = []
    for f in range(D):
        psi = family.state_matrix(f)
        state = np.einsum("AB,ab->ABab", psi, blank)
        state = _controlled_group(state, t, 0, 2)
        state = _controlled_group(state, t, 1, 3)
        target = np.einsum("AB,ab->ABab", psi, psi).ravel()
        if not measure:
            fid = abs(np.vdot(target, state.ravel())) ** 2
            outcomes.append(CloneOutcome(f, None, 1.0, float(fid)))
            continue
        for r in range(D):
            post = _apply_local(state, Ms[r], 2)
            p = float(np.vdot(post, post).real)
            if p < 1e-15:
                outcomes.append(CloneOutcome(f, r, p, float("nan")))
                continue
            Q = correction(family, r)
            post = _apply_local(_apply_local(post, Q, 2), Q, 3) / np.sqrt(p)
            fid = abs(np.vdot(target, post.ravel())) ** 2
            outcomes.append(CloneOutcome(f, r, p, float(fid)))
    return CloneReport(outcomes, comp, measure)


# --- blank-state bounds ------------------------------------------------------

def _full_rank(family: GroupShiftedFamily) -> np.ndarray:
    lam = np.array(family.lam)
    if np.any(lam <= 0):
        raise ValueError("all coefficients must be positive (full Schmidt rank)")
    return lam


def lemma_sums(family: GroupShiftedFamily, mu) -> tuple[np.ndarray, np.ndarray]:
    """S1[g] = sum_f mu_{f^-1} lambda_{fg}, S2[g, h] = sum_f mu_{f^-1} lambda_{fg} lambda_{fh}."""
    G = family.group
    t = G.array()
    lam = np.array(family.lam)
    mu = np.asarray(mu, dtype=float)
    inv = np.array([G.inverse(f) for f in range(family.D)])
    w = mu[inv]
    L = lam[t]  # L[f, g] = lambda_{fg}
    S1 = w @ L
    S2 = np.einsum("f,fg,fh->gh", w, L, L)
    return S1, S2


def gamma_min_bound(family: GroupShiftedFamily, mu=None) -> float:
    """Lower bound on the smallest blank coefficient; default weights mu_f = eta / lambda_{f^-1}."""
    lam = _full_rank(family)
    if mu is None:
        G = family.group
        inv = np.array([G.inverse(f) for f in range(family.D)])
        mu = 1 / lam[inv]
        mu = mu / mu.sum()
    S1, S2 = lemma_sums(family, mu)
    return float(S2.min() / S1.min())


def gamma_min_bound_closed(family: GroupShiftedFamily) -> float:
    """(1/D) min_{g,h} sum_f lambda_{fg} lambda_{fh} / lambda_f."""
    lam = _full_rank(family)
    L = lam[family.group.array()]
    S = np.einsum("f,fg,fh->gh", 1 / lam, L, L)
    return float(S.min() / family.D)


def lemma10_vectors(family: GroupShiftedFamily, gamma, mu) -> tuple[np.ndarray, np.ndarray]:
    S1, S2 = lemma_sums(family, mu)
    alpha = np.outer(S1, np.asarray(gamma, dtype=float))  # alpha[g, h] = gamma_h S1[g]
    return alpha.ravel(), S2.ravel()


def blank_admissible(family: GroupShiftedFamily, gamma, mu=None) -> bool:
    """Necessary condition alpha < beta for the blank coefficients gamma."""
    mu = np.full(family.D, 1 / family.D) if mu is None else mu
    a, b = lemma10_vectors(family, gamma, mu)
    return majorized_by(a / a.sum(), b / b.sum())


def q_distribution(family: GroupShiftedFamily) -> np.ndarray:
    lam = np.array(family.lam)
    t = family.group.array()
    return np.array([sum(lam[f] * lam[t[f, r]] for f in range(family.D)) for r in range(family.D)])


def entanglement_gap(family: GroupShiftedFamily) -> dict:
    lam = np.array(family.lam)
    if np.allclose(lam, 1 / family.D, atol=1e-12):
        raise ValueError("gap undefined: the states are maximally entangled")
    q = q_distribution(family)
    hq, hl = entropy(q / q.sum()), entropy(lam)
    return {"q": q.tolist(), "H_q": hq, "H_lambda": hl, "gap": hq - hl}


# --- clonable sets -----------------------------------------------------------

def _find_up_to_phase(mats: list[np.ndarray], M: np.ndarray, tol: float = TOL) -> int | None:
    for i, A in enumerate(mats):
        k = np.unravel_index(np.argmax(np.abs(A)), A.shape)
        if abs(M[k]) < tol:
            continue
        ph = M[k] / A[k]
        if abs(abs(ph) - 1) > 1e-6:
            continue
        if np.linalg.norm(M - ph * A) < tol * max(1.0, np.linalg.norm(A)):
            return i
    return None


@dataclass
class ClonableReport:
    equal_det: bool
    spectra_ok: bool
    closed: bool
    group_order: int
    divides_D: bool
    table: list | None
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "equal_det": self.equal_det,
            "spectra_ok": self.spectra_ok,
            "closed": self.closed,
            "group_order": self.group_order,
            "divides_D": self.divides_D,
            "table": self.table,
            "witness": self.witness,
        }


def clonable_set_analysis(psi_list, max_order: int | None = None) -> ClonableReport:
    """Necessary conditions for a set of states to be clonable by one separable operation."""
    psis = [np.asarray(p, dtype=complex) for p in psi_list]
    D = psis[0].shape[0]
    for i, p in enumerate(psis):
        if p.shape != (D, D):
            raise ValueError("state matrices must be square and equal in size")
        if abs(np.linalg.norm(p) - 1) > TOL:
            raise ValueError(f"state {i} is not normalized")
    for i, j in itertools.combinations(range(len(psis)), 2):
        if abs(np.trace(psis[i].conj().T @ psis[j])) > TOL:
            raise ValueError(f"states {i} and {j} are not orthogonal")
    dets = [abs(np.linalg.det(p)) for p in psis]
    if min(dets) < 1e-12:
        raise ValueError("a state is not of full Schmidt rank")
    witness = None
    equal_det = all(abs(d - dets[0]) < 1e-9 * max(1.0, dets[0]) for d in dets)
    if not equal_det:
        i = int(np.argmax(np.abs(np.array(dets) - dets[0])))
        witness = {"condition": "det", "i": 0, "j": i, "dets": [dets[0], dets[i]]}
    spectra = [np.sort(np.linalg.svd(p, compute_uv=False) ** 2)[::-1] for p in psis]
    spectra_ok = True
    for i, j in itertools.combinations(range(len(psis)), 2):
        same = np.allclose(spectra[i], spectra[j], atol=1e-9)
        comparable = majorized_by(spectra[i], spectra[j]) or majorized_by(spectra[j], spectra[i])
        if comparable and not same:
            spectra_ok = False
            witness = witness or {"condition": "spectra", "i": i, "j": j}
    # close T_i = psi_i psi_0^{-1} under multiplication, up to phase
    inv0 = np.linalg.inv(psis[0])
    elems = [p @ inv0 for p in psis]
    limit = max_order or D * D
    closed = True
    changed = True
    while changed:
        changed = False
        for a, b in itertools.product(range(len(elems)), repeat=2):
            prod = elems[a] @ elems[b]
            if _find_up_to_phase(elems, prod) is None:
                elems.append(prod)
                closed = False
                changed = True
                if len(elems) > limit:
                    return ClonableReport(equal_det, spectra_ok, False, -1, False, None,
                                          witness or {"condition": "closure", "order_exceeds": limit})
                break
    table = [[_find_up_to_phase(elems, elems[a] @ elems[b]) for b in range(len(elems))] for a in range(len(elems))]
    order = len(elems)
    return ClonableReport(equal_det, spectra_ok, closed, order, D % order == 0, table, witness)
