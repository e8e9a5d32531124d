"""
Clifford data: metric, Pauli matrices, Dirac matrices and charge conjugation.

Matrices are numpy object arrays holding exact Scalars.
"""

import logging
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from colorpoincare.core.errors import GradingError, NonInvertibleError
from colorpoincare.core.scalars import Scalar, ScalarField

logger = logging.getLogger(__name__)

PHASE_NAMES = ["1", "-1", "i", "-i"]
GAMMA_FAMILIES = ["chiral", "dirac", "majorana", "euclidean"]
CHARGE_CONJUGATIONS = ["g2g4", "g4g2", "ig2", "g1g3", "g4"]
SPIN_BLOCKS = ["transpose", "negative"]
SPINOR_ORDERS = ["undotted_first", "as_written"]
METRICS: Dict[str, Tuple[int, int, int, int]] = {
    "euclidean": (1, 1, 1, 1),
    "mostly_plus": (1, 1, 1, -1),
    "mostly_minus": (-1, -1, -1, 1),
}


def phase_scalar(f: ScalarField, name: str) -> Scalar:
    if name not in PHASE_NAMES:
        raise GradingError(f"unknown phase {name!r}; expected one of {PHASE_NAMES}")
    value = f.i() if name.endswith("i") else f.one
    return -value if name.startswith("-") else value


# --- Matrix helpers ---


def matrix(f: ScalarField, rows: Sequence[Sequence]) -> np.ndarray:
    """Object array of Scalars from nested ints, Fractions or Scalars."""
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            out[i, j] = f.coerce(value)
    return out


def zeros(f: ScalarField, n: int, m: Optional[int] = None) -> np.ndarray:
    out = np.empty((n, m or n), dtype=object)
    out.fill(f.zero)
    return out


def identity(f: ScalarField, n: int) -> np.ndarray:
    out = zeros(f, n)
    for k in range(n):
        out[k, k] = f.one
    return out


def scale(c: Scalar, a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for idx, value in np.ndenumerate(a):
        out[idx] = c * value
    return out


def equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def is_zero(a: np.ndarray) -> bool:
    return all(not x for x in a.flat)


def conjugate(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for idx, value in np.ndenumerate(a):
        out[idx] = value.conjugate()
    return out


def inverse(f: ScalarField, a: np.ndarray) -> np.ndarray:
    """Exact Gauss-Jordan inverse; raises NonInvertibleError for singular input."""
    n = a.shape[0]
    work = np.empty((n, 2 * n), dtype=object)
    work[:, :n] = a
    work[:, n:] = identity(f, n)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r, col]), None)
        if pivot is None:
            raise NonInvertibleError("matrix is singular")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        inv = work[col, col].inverse()
        work[col] = [inv * x for x in work[col]]
        for r in range(n):
            if r != col and work[r, col]:
                factor = work[r, col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return work[:, n:].copy()


def is_invertible(f: ScalarField, a: np.ndarray) -> bool:
    try:
        inverse(f, a)
    except NonInvertibleError:
        return False
    return True


# --- Pauli and gamma matrices ---


def pauli_matrices(f: ScalarField, sigma4: str = "1") -> List[np.ndarray]:
    """sigma_1..sigma_3 and sigma_4 = phase * identity."""
    i = f.i()
    s4 = phase_scalar(f, sigma4)
    return [
        matrix(f, [[0, 1], [1, 0]]),
        matrix(f, [[0, -i], [i, 0]]),
        matrix(f, [[1, 0], [0, -1]]),
        matrix(f, [[s4, 0], [0, s4]]),
    ]


def gamma_family(f: ScalarField, family: str) -> List[np.ndarray]:
    s1, s2, s3, one = pauli_matrices(f)
    i = f.i()
    is2 = scale(i, s2)
    if family == "chiral":
        return [np.kron(is2, s) for s in (s1, s2, s3)] + [np.kron(s1, one)]
    if family == "dirac":
        return [np.kron(is2, s) for s in (s1, s2, s3)] + [np.kron(s3, one)]
    if family == "majorana":
        return [np.kron(s1, one), np.kron(s3, s1), np.kron(s3, s3), np.kron(is2, one)]
    if family == "euclidean":
        return [np.kron(s1, s) for s in (s1, s2, s3)] + [np.kron(s2, one)]
    raise GradingError(f"unknown gamma family {family!r}; expected one of {GAMMA_FAMILIES}")


def charge_conjugation(f: ScalarField, gamma: Sequence[np.ndarray], name: str) -> np.ndarray:
    g1, g2, g3, g4 = gamma
    if name == "g2g4":
        return g2 @ g4
    if name == "g4g2":
        return g4 @ g2
    if name == "ig2":
        return scale(f.i(), g2)
    if name == "g1g3":
        return g1 @ g3
    if name == "g4":
        return g4.copy()
    raise GradingError(f"unknown charge conjugation {name!r}")


def metric_of(f: ScalarField, gamma: Sequence[np.ndarray]) -> Optional[Tuple[int, ...]]:
    """Diagonal signs read off gamma_mu^2, or None when a square is not +-identity."""
    signs = []
    eye = identity(f, 4)
    for g in gamma:
        sq = g @ g
        if equal(sq, eye):
            signs.append(1)
        elif equal(sq, scale(-f.one, eye)):
            signs.append(-1)
        else:
            return None
    return tuple(signs)


# --- Convention records ---


@dataclass(frozen=True)
class PhaseChoices:
    """Per-family normalisation of the supertranslation brackets."""

    translation_phase: str = "1"
    white_phase: str = "1"
    bicolor_phase: str = "-1"
    norm: int = 2

    def __post_init__(self):
        for name in (self.translation_phase, self.white_phase, self.bicolor_phase):
            if name not in PHASE_NAMES:
                raise GradingError(f"unknown phase {name!r}")
        if self.norm not in (1, 2):
            raise GradingError(f"norm must be 1 or 2, got {self.norm}")

    @classmethod
    def literal(cls) -> "PhaseChoices":
        """Coefficients exactly as printed in the bracket relations."""
        return cls("1", "1", "1", 1)

    def factor(self, f: ScalarField, family: str) -> Scalar:
        phase = {
            "translation": self.translation_phase,
            "white": self.white_phase,
            "bicolor": self.bicolor_phase,
        }[family]
        return phase_scalar(f, phase) * self.norm

    def to_dict(self) -> Dict:
        return {
            "translation_phase": self.translation_phase,
            "white_phase": self.white_phase,
            "bicolor_phase": self.bicolor_phase,
            "norm": self.norm,
        }


@dataclass(frozen=True)
class SpinorPairing:
    """
    Index placement of sigma in the two-component supertranslation brackets.

    order "undotted_first" reads sigma_mu with the undotted generator's index
    first, transposing it when the dotted generator leads; "as_written" keeps
    the bracket's own order. raise_bicolor applies the metric sign of the P^mu
    pairing to the bicolor targets as well.
    """

    order: str = "undotted_first"
    raise_bicolor: bool = True

    def __post_init__(self):
        if self.order not in SPINOR_ORDERS:
            raise GradingError(f"unknown spinor pairing order {self.order!r}; expected one of {SPINOR_ORDERS}")

    @classmethod
    def literal(cls) -> "SpinorPairing":
        """sigma_mu in the printed index order, lower index on the bicolor targets."""
        return cls("as_written", False)

    @property
    def label(self) -> str:
        return f"{self.order}{'+raised' if self.raise_bicolor else ''}"

    def to_dict(self) -> Dict:
        return {"order": self.order, "raise_bicolor": self.raise_bicolor}


@dataclass(frozen=True, eq=False)
class CliffordData:
    name: str
    field: ScalarField
    metric: Tuple[int, int, int, int]
    pauli: List[np.ndarray]
    gamma: List[np.ndarray]
    C: np.ndarray
    phase_choices: PhaseChoices = PhaseChoices()
    spin_block: str = "transpose"
    spinor_pairing: SpinorPairing = SpinorPairing()
    _cache: Dict = field(default_factory=dict, repr=False)

    def gamma_upper(self, mu: int) -> np.ndarray:
        """gamma^mu = eta^{mu mu} gamma_mu, mu in 1..4."""
        key = ("upper", mu)
        if key not in self._cache:
            g = self.gamma[mu - 1]
            self._cache[key] = g if self.metric[mu - 1] > 0 else scale(-self.field.one, g)
        return self._cache[key]

    def gamma_c(self, mu: int) -> np.ndarray:
        """gamma^mu C."""
        key = ("gc", mu)
        if key not in self._cache:
            self._cache[key] = self.gamma_upper(mu) @ self.C
        return self._cache[key]

    def gamma_pair(self, alpha: int, beta: int) -> np.ndarray:
        """gamma_alpha gamma_beta."""
        key = ("pair", alpha, beta)
        if key not in self._cache:
            self._cache[key] = self.gamma[alpha - 1] @ self.gamma[beta - 1]
        return self._cache[key]

    def sigma_pair(self, alpha: int, beta: int) -> np.ndarray:
        key = ("spair", alpha, beta)
        if key not in self._cache:
            self._cache[key] = self.pauli[alpha - 1] @ self.pauli[beta - 1]
        return self._cache[key]

    def problems(self) -> List[str]:
        """Violated Clifford-data invariants; empty when consistent."""
        f = self.field
        found = []
        eye = identity(f, 4)
        for a in range(4):
            for b in range(a, 4):
                anti = self.gamma[a] @ self.gamma[b] + self.gamma[b] @ self.gamma[a]
                expected = scale(f.rational(2 * self.metric[a]), eye) if a == b else zeros(f, 4)
                if not equal(anti, expected):
                    found.append(f"Clifford relation fails for ({a + 1},{b + 1})")
        if not is_invertible(f, self.C):
            found.append("C is not invertible")
        else:
            for mu in range(1, 5):
                gc = self.gamma_c(mu)
                if not equal(gc, gc.T):
                    found.append(f"gamma^{mu} C is not symmetric")
        return found

    def is_valid(self) -> bool:
        return not self.problems()

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "metric": list(self.metric),
            "phase_choices": self.phase_choices.to_dict(),
            "spin_block": self.spin_block,
            "spinor_pairing": self.spinor_pairing.to_dict(),
            "gamma": [[[str(x) for x in row] for row in g] for g in self.gamma],
            "C": [[str(x) for x in row] for row in self.C],
        }


def make_clifford(
    f: ScalarField,
    family: str = "chiral",
    charge: str = "g2g4",
    sigma4: str = "1",
    order: Tuple[int, int, int] = (1, 2, 3),
    phase_choices: Optional[PhaseChoices] = None,
    spin_block: str = "transpose",
    metric: Optional[Tuple[int, int, int, int]] = None,
    spinor_pairing: Optional[SpinorPairing] = None,
) -> CliffordData:
    """Assemble a convention; the metric defaults to the one the gammas square to."""
    if spin_block not in SPIN_BLOCKS:
        raise GradingError(f"unknown spin block form {spin_block!r}")
    base = gamma_family(f, family)
    gamma = [base[k - 1] for k in order] + [base[3]]
    if metric is None:
        metric = metric_of(f, gamma)
        if metric is None:
            raise GradingError(f"gamma family {family!r} does not square to a metric")
    C = charge_conjugation(f, gamma, charge)
    suffix = "" if order == (1, 2, 3) else "/" + "".join(map(str, order))
    name = f"{family}{suffix}:{charge}:s4={sigma4}"
    if spinor_pairing is not None and spinor_pairing != SpinorPairing():
        name += f":{spinor_pairing.label}"
    return CliffordData(
        name=name,
        field=f,
        metric=tuple(metric),  # type: ignore[arg-type]
        pauli=pauli_matrices(f, sigma4),
        gamma=gamma,
        C=C,
        phase_choices=phase_choices or PhaseChoices(),
        spin_block=spin_block,
        spinor_pairing=spinor_pairing or SpinorPairing(),
    )


def default_clifford(f: ScalarField) -> CliffordData:
    """The frozen convention: metric diag(-1,-1,-1,1), chiral gammas, C = gamma_2 gamma_4."""
    return make_clifford(f, "chiral", "g2g4")


def spatial_orders(with_permutations: bool) -> List[Tuple[int, int, int]]:
    if not with_permutations:
        return [(1, 2, 3)]
    return [tuple(p) for p in permutations((1, 2, 3))]  # type: ignore[misc]
