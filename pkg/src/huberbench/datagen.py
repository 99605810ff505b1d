"""Synthetic regression data with adversarial label contamination.

Generates Gaussian designs ``X`` with a chosen covariance, clean labels
``y_i = <x_i, t> + eps_i`` under a symmetric noise law, then replaces a
seeded subset of labels with outliers.  The informative/outlier partition
is recorded so experiments can score estimators against the truth.

All generation is a pure function of (spec, seed).  Parallel or sweep
callers derive per-cell seeds with :func:`mix_seed` (root seed plus cell
index pushed through a splitmix64 round), never by reusing one generator.
"""

import csv
import io
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import linalg as sla
from scipy import stats

from .validation import as_matrix, as_vector, require_finite, require_positive

__all__ = [
    "mix_seed", "GaussianDesignSpec", "NoiseModel", "GaussianNoise",
    "StudentTNoise", "CauchyNoise", "UniformRange", "ConstantShift",
    "AdversarialFlip", "ContaminationSpec", "GroundTruth",
    "ContaminatedDataset", "generate_design", "sample_noise",
    "inject_outliers", "make_regression_dataset", "write_dataset_csv",
    "read_dataset_csv", "FLOAT_FORMAT",
]

_MASK64 = (1 << 64) - 1

# 17 significant digits round-trip any float64 exactly.
FLOAT_FORMAT = ".17g"


def mix_seed(root_seed, index):
    """Derive a child seed: (root_seed + index) through one splitmix64 round."""
    z = (int(root_seed) + int(index)) & _MASK64
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


@dataclass(frozen=True)
class GaussianDesignSpec:
    """Zero-mean Gaussian design rows with covariance ``covariance``."""

    dim: int
    covariance: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        cov = as_matrix(self.covariance, "covariance")
        if cov.shape != (self.dim, self.dim):
            raise ValueError(
                f"covariance shape {cov.shape} does not match dim {self.dim}")
        if not np.allclose(cov, cov.T, atol=1e-12):
            raise ValueError("covariance must be symmetric")
        w = np.linalg.eigvalsh(cov)
        if w.min() < -1e-10 * max(1.0, w.max()):
            raise ValueError(
                f"covariance is not positive semidefinite "
                f"(min eigenvalue {w.min():.3e})")
        object.__setattr__(self, "covariance", cov)

    @property
    def trace(self):
        return float(np.trace(self.covariance))

    @classmethod
    def identity(cls, dim):
        return cls(dim, np.eye(dim))

    @classmethod
    def diagonal(cls, diag):
        d = as_vector(diag, "diag")
        return cls(d.size, np.diag(d))

    @classmethod
    def toeplitz(cls, dim, rho):
        """Sigma_ij = rho^|i-j|; the stock non-isotropic, RE-friendly design."""
        if not (-1.0 < rho < 1.0):
            raise ValueError(f"rho must lie in (-1, 1), got {rho}")
        return cls(dim, sla.toeplitz(rho ** np.arange(dim)))

    def factor(self):
        """A matrix ``A`` with ``A A^T = covariance`` (Cholesky, eigen fallback)."""
        try:
            return np.linalg.cholesky(self.covariance)
        except np.linalg.LinAlgError:
            w, v = np.linalg.eigh(self.covariance)
            return v * np.sqrt(np.clip(w, 0.0, None))


class NoiseModel:
    """Symmetric-about-zero noise with a sampler and an evaluable cdf."""

    label = "abstract"

    def sample(self, n, rng):
        raise NotImplementedError

    def cdf(self, t):
        raise NotImplementedError


class GaussianNoise(NoiseModel):
    def __init__(self, sigma=1.0):
        require_positive(sigma, "sigma")
        self.sigma = float(sigma)
        self.label = f"gaussian({sigma:g})"

    def sample(self, n, rng):
        return rng.normal(0.0, self.sigma, size=n)

    def cdf(self, t):
        return stats.norm.cdf(np.asarray(t, dtype=float) / self.sigma)


class StudentTNoise(NoiseModel):
    def __init__(self, df=2.0):
        require_positive(df, "df")
        self.df = float(df)
        self.label = f"student_t({df:g})"

    def sample(self, n, rng):
        return rng.standard_t(self.df, size=n)

    def cdf(self, t):
        return stats.t.cdf(np.asarray(t, dtype=float), df=self.df)


class CauchyNoise(NoiseModel):
    def __init__(self, scale=1.0):
        require_positive(scale, "scale")
        self.scale = float(scale)
        self.label = f"cauchy({scale:g})"

    def sample(self, n, rng):
        return self.scale * rng.standard_cauchy(size=n)

    def cdf(self, t):
        return 0.5 + np.arctan(np.asarray(t, dtype=float) / self.scale) / np.pi


@dataclass(frozen=True)
class UniformRange:
    """Replace contaminated labels with uniform draws on [lo, hi]."""
    lo: float
    hi: float

    def replace(self, old, rng):
        if self.hi < self.lo:
            raise ValueError(f"empty range [{self.lo}, {self.hi}]")
        return rng.uniform(self.lo, self.hi, size=old.size)


@dataclass(frozen=True)
class ConstantShift:
    """Shift contaminated labels by a fixed offset."""
    shift: float

    def replace(self, old, rng):
        return old + self.shift


@dataclass(frozen=True)
class AdversarialFlip:
    """Flip and inflate contaminated labels (y -> -10 y), a cheap stress case."""

    def replace(self, old, rng):
        return -10.0 * old


@dataclass(frozen=True)
class ContaminationSpec:
    count: int
    generator: object = UniformRange(-1e5, 1e5)
    seed: int = 0

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"count must be >= 0, got {self.count}")


@dataclass(frozen=True)
class GroundTruth:
    """True coefficient vector behind a synthetic dataset."""

    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", as_vector(self.coefficients, "coefficients"))

    @property
    def sparsity(self):
        return int(np.count_nonzero(self.coefficients))

    @property
    def dim(self):
        return self.coefficients.size


@dataclass(frozen=True)
class ContaminatedDataset:
    """Design, labels, and the hidden informative/outlier index partition."""

    design: np.ndarray
    labels: np.ndarray
    informative_idx: np.ndarray
    outlier_idx: np.ndarray
    truth: GroundTruth | None = None

    def __post_init__(self):
        design = as_matrix(self.design, "design")
        labels = as_vector(self.labels, "labels")
        if labels.size != design.shape[0]:
            raise ValueError("labels length does not match design rows")
        info = np.asarray(self.informative_idx, dtype=int)
        out = np.asarray(self.outlier_idx, dtype=int)
        merged = np.concatenate([info, out])
        if np.intersect1d(info, out).size:
            raise ValueError("informative and outlier index sets overlap")
        if not np.array_equal(np.sort(merged), np.arange(labels.size)):
            raise ValueError("index sets do not partition the sample")
        object.__setattr__(self, "design", design)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "informative_idx", np.sort(info))
        object.__setattr__(self, "outlier_idx", np.sort(out))

    @property
    def n(self):
        return self.labels.size

    @property
    def dim(self):
        return self.design.shape[1]


def generate_design(spec, n, seed):
    """Draw ``n`` i.i.d. rows from N(0, covariance), deterministic in ``seed``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, spec.dim))
    return z @ spec.factor().T


def sample_noise(model, n, seed):
    """Draw ``n`` i.i.d. noise values, deterministic in ``seed``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return model.sample(n, np.random.default_rng(seed))


def inject_outliers(labels, spec):
    """Replace ``spec.count`` seeded positions of ``labels`` via the generator.

    Returns the contaminated copy and the sorted replaced indices; every
    other entry is bit-identical to the input.
    """
    labels = as_vector(labels, "labels")
    if spec.count > labels.size:
        raise ValueError(
            f"cannot contaminate {spec.count} of {labels.size} labels")
    out = labels.copy()
    if spec.count == 0:
        return out, np.empty(0, dtype=int)
    rng = np.random.default_rng(spec.seed)
    idx = np.sort(rng.choice(labels.size, size=spec.count, replace=False))
    out[idx] = spec.generator.replace(out[idx], rng)
    return out, idx


def make_regression_dataset(design_spec, truth, noise, contamination, n, seed):
    """Compose design, clean labels, and contamination into a dataset.

    ``seed`` drives the design (child seed 0) and the noise (child seed 1);
    outlier placement is driven by ``contamination.seed`` so callers control
    it explicitly.  Pass ``contamination=None`` for clean data.
    """
    if truth.dim != design_spec.dim:
        raise ValueError(
            f"truth has dim {truth.dim}, design spec has dim {design_spec.dim}")
    x = generate_design(design_spec, n, mix_seed(seed, 0))
    eps = sample_noise(noise, n, mix_seed(seed, 1))
    labels = x @ truth.coefficients + eps
    if contamination is None:
        contamination = ContaminationSpec(count=0)
    labels, outlier_idx = inject_outliers(labels, contamination)
    informative = np.setdiff1d(np.arange(n), outlier_idx)
    return ContaminatedDataset(x, labels, informative, outlier_idx, truth)


def _fmt(x):
    return format(float(x), FLOAT_FORMAT)


def write_dataset_csv(dataset, path_or_file):
    """Write the audit CSV: header ``x_1..x_p, y, is_outlier``."""
    close = False
    if isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__"):
        fh = open(path_or_file, "w", newline="")
        close = True
    else:
        fh = path_or_file
    try:
        writer = csv.writer(fh)
        p = dataset.dim
        writer.writerow([f"x_{j + 1}" for j in range(p)] + ["y", "is_outlier"])
        outliers = set(dataset.outlier_idx.tolist())
        for i in range(dataset.n):
            row = [_fmt(v) for v in dataset.design[i]]
            row.append(_fmt(dataset.labels[i]))
            row.append("1" if i in outliers else "0")
            writer.writerow(row)
    finally:
        if close:
            fh.close()


def read_dataset_csv(path_or_file):
    """Parse the audit CSV back into a dataset.

    The ``is_outlier`` column is optional; without it every index is
    treated as informative-unknown.  Malformed rows are reported with
    their line number.
    """
    close = False
    if isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__"):
        fh = open(path_or_file, "r", newline="")
        close = True
    else:
        fh = path_or_file
    try:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("empty dataset file") from None
        header = [h.strip() for h in header]
        has_flag = header and header[-1] == "is_outlier"
        y_pos = len(header) - (2 if has_flag else 1)
        expected_x = [f"x_{j + 1}" for j in range(y_pos)]
        if header[:y_pos] != expected_x or header[y_pos] != "y":
            raise ValueError(
                f"unexpected header {header!r}; expected x_1..x_p, y[, is_outlier]")
        rows, labels, flags = [], [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(
                    f"line {lineno}: expected {len(header)} fields, got {len(row)}")
            try:
                rows.append([float(v) for v in row[:y_pos]])
                labels.append(float(row[y_pos]))
                if has_flag:
                    flags.append(int(row[y_pos + 1]))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        design = np.array(rows, dtype=float).reshape(len(rows), y_pos)
        labels = np.array(labels, dtype=float)
        n = labels.size
        if has_flag:
            flags = np.array(flags, dtype=int)
            outlier_idx = np.flatnonzero(flags == 1)
        else:
            outlier_idx = np.empty(0, dtype=int)
        informative = np.setdiff1d(np.arange(n), outlier_idx)
        return ContaminatedDataset(design, labels, informative, outlier_idx)
    finally:
        if close:
            fh.close()
