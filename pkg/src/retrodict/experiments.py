"""Figure data sets and verification suites.

Every channel in an experiment is generated from ``stream(seed, index)`` and
its measures use ``IntegrationConfig(seed=seed)``, so a row can be rebuilt from
its recorded seed and index alone. All channels of one run share their prior
samples, which keeps comparisons between rows low-noise.
"""

from dataclasses import dataclass, replace
import logging
import math
import time

import numpy as np

from . import bit_analytic, classical, measures, oracle, quantum, samplers
from . import rng as rng_mod
from .errors import SingularPushforward

log = logging.getLogger(__name__)

EXPERIMENTS = ("bit", "qubit", "trit")
SUITES = ("dpi", "theorems", "absorbing")


@dataclass(frozen=True)
class ExperimentConfig:
    """Settings shared by the experiments and suites; ``None`` picks the per-experiment default.

    ``samples`` is the number of prior pairs per Monte Carlo estimate.
    ``grid`` is the bit-figure resolution or the qubit grid size.
    ``count`` is the number of random channels (trit figure, per D value) or
    random pairs and instances (suites).
    """

    experiment: str = "bit"
    seed: int = 0
    samples: int = None
    quantum_samples: int = None
    grid: int = None
    quota: int = 1
    count: int = None
    quantum_count: int = None
    injected: int = 40
    dim: int = 3
    d_values: tuple = (0.0, 0.15, 0.3, 0.45, 0.6, 0.75)
    check: bool = False
    out: str = None
    fmt: str = "csv"
    svg: bool = False
    workers: int = 1
    cache_path: str = None

    def __post_init__(self):
        for name in ("samples", "quantum_samples", "grid", "count", "quantum_count"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive")
        if self.quota < 1 or self.injected < 0 or self.dim < 2:
            raise ValueError("quota and dim must be positive, injected nonnegative")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")

    def integration(self, kind, normalize=True):
        n = self.samples if kind == "classical" else self.quantum_samples
        return measures.IntegrationConfig(npairs=n, seed=self.seed, normalize=normalize,
                                          workers=self.workers, cache_path=self.cache_path)


# ---------------------------------------------------------------------------
# figures


def run_bit_figure(cfg):
    """Closed-form measures over a regular (D, F) grid, endpoints included.

    Normalized columns divide by the ``D = 0`` values (2/3 and 1/2), the
    erasure limits. With ``cfg.check`` each row also carries the quadrature
    subjectivity of the corresponding channel.
    """
    n = cfg.grid or 64
    grid = np.linspace(0.0, 1.0, n)
    rows = []
    for i, D in enumerate(grid):
        for j, F in enumerate(grid):
            try:
                s = bit_analytic.bit_subjectivity_analytic(D, F)
                dv = bit_analytic.bit_divchange_analytic(D, F)
            except bit_analytic.DomainError:
                continue
            row = {"index": i * n + j, "D": D, "F": F, "Is": s, "Id": dv,
                   "Is_norm": 1.5 * s, "Id_norm": 2.0 * dv}
            if cfg.check:
                m = bit_analytic.bit_channel_from_coords(D, F)
                try:
                    row["Is_quadrature"] = oracle.quadrature_bit_subjectivity(m, normalize=False)
                except SingularPushforward:
                    row["Is_quadrature"] = math.nan
            rows.append(row)
    return rows


def qubit_row(sample, index, cfg):
    kraus = sample.kraus()
    s = measures.quantum_subjectivity(kraus, cfg.integration("quantum"))
    dv = measures.quantum_avg_div_change(kraus, cfg.integration("quantum"))
    vec, period = quantum.fixed_bloch_vector(kraus, with_period=True)
    _flag_conjecture(s, index)
    return {"index": index, "cell_u": sample.cell[0], "cell_f": sample.cell[1],
            "u": sample.coords[0], "f": sample.coords[1],
            "qad": quantum.qad(kraus), "qfd": quantum.qfd(kraus), "period": period,
            "sandwiched": sample.sandwiched, "retries": sample.retries,
            "gamma": sample.gamma, "p": sample.p,
            "Is": s.value, "Is_stderr": s.stderr, "Id": dv.value, "Id_stderr": dv.stderr,
            "rejected": s.rejected + dv.rejected, "seed": cfg.seed}


def run_qubit_figure(cfg):
    """Grid-sampled qubit channels with normalized measures; returns ``(rows, cell_means)``."""
    n = cfg.grid or 8
    cells = samplers.grid_cells(n, quota=cfg.quota)
    samples = samplers.fill_grid(cells, cfg.seed)
    rows = []
    for k, sample in enumerate(samples):
        c = sample.cell[0] * n + sample.cell[1]
        index = c * 2**20 + (k - c * cfg.quota)
        rows.append(qubit_row(sample, index, cfg))
    means = []
    for cell in cells:
        members = [r for r in rows if (r["cell_u"], r["cell_f"]) == cell.index]
        entry = {"cell_u": cell.index[0], "cell_f": cell.index[1], "count": len(members)}
        for key in ("Is", "Id", "qad", "qfd"):
            vals = np.array([r[key] for r in members])
            entry[key] = float(vals.mean()) if vals.size else math.nan
            if key in ("Is", "Id"):
                errs = np.array([r[key + "_stderr"] for r in members])
                entry[key + "_stderr"] = float(math.sqrt(np.sum(errs**2)) / max(1, errs.size))
        means.append(entry)
    return rows, means


def _flag_conjecture(est, index):
    if est.normalized and est.value > 1.0 + 3.0 * est.stderr:
        log.info("sample %s: normalized subjectivity %.4f exceeds the erasure value", index, est.value)


def trit_row(m, index, family, cfg, D=math.nan):
    c = cfg.integration("classical")
    s = measures.classical_subjectivity(m, c)
    dv = measures.classical_avg_div_change(m, c)
    _flag_conjecture(s, index)
    _, period = classical.fixed_centroid(m, with_period=True)
    row = {"index": index, "family": family, "class": str(classical.classify(m)), "D": D,
           "cad": classical.abs_determinant(m), "cfd": classical.cfd(m), "period": period,
           "skew": classical.skew(m), "Is": s.value, "Is_stderr": s.stderr,
           "Id": dv.value, "Id_stderr": dv.stderr, "rejected": s.rejected + dv.rejected,
           "seed": cfg.seed}
    for a in range(3):
        for b in range(3):
            row[f"m{a}{b}"] = float(m[a, b])
    return row


INJECTED_FAMILIES = ("alternating", "unbiased", "standard", "deterministic", "spiral",
                     "unbiased_spiral", "permutation")


def injected_channel(family, gen):
    """One random member of a special trit family."""
    outer = gen.permutation(3)
    if family == "alternating":
        p, q = _split(gen)
        return samplers.alternating_absorber(p, q, outer)
    if family == "unbiased":
        return samplers.unbiased_absorber(gen.uniform(1e-3, 0.5), outer)
    if family == "standard":
        p, q = _split(gen)
        return samplers.construct_absorbing(3, 2, [p, q], [1.0 - p - q], outer)
    if family == "deterministic":
        r = gen.dirichlet(np.ones(3), size=2).T
        # first row feeds the absorbing state; the rest stays transient
        return samplers.construct_absorbing(3, 1, r[:1], r[1:], outer)
    if family == "spiral":
        p, q = _split(gen)
        return samplers.construct_spiral(p, q, outer)
    if family == "unbiased_spiral":
        p = gen.uniform(1e-3, 0.5)
        return samplers.construct_spiral(p, p, outer)
    if family == "permutation":
        return samplers.permutation_matrix(outer)
    raise ValueError(f"unknown family {family!r}")


def _split(gen):
    """``(p, q)`` with ``p, q >= 0``, ``p + q <= 1`` and ``p > 0``."""
    w = gen.dirichlet(np.ones(3))
    return max(w[0], 1e-3), w[1] * (1.0 - max(w[0], 1e-3)) / max(1e-12, w[1] + w[2])


def run_trit_figure(cfg):
    """Restricted-simplex trit channels over a D sweep plus tagged special families."""
    rows = []
    per_d = cfg.count or 200
    for k, D in enumerate(cfg.d_values):
        for j in range(per_d):
            index = k * 2**20 + j
            m = samplers.sample_trit_channel_restricted(D, rng_mod.stream(cfg.seed, index, tag=rng_mod.CHANNEL))
            rows.append(trit_row(m, index, "random", cfg, D))
    base = len(cfg.d_values) * 2**20
    for f, family in enumerate(INJECTED_FAMILIES):
        for j in range(cfg.injected):
            index = base + f * 2**20 + j
            m = injected_channel(family, rng_mod.stream(cfg.seed, index, tag=rng_mod.CHANNEL))
            rows.append(trit_row(m, index, family, cfg))
    return rows


def matched_separation(rows, families, k=5, key="Is"):
    """Mean of ``key`` over rows of ``families`` versus cad-matched Generic random rows.

    Each special row is paired with the mean of its ``k`` nearest Generic rows
    in absolute determinant. Returns the two means, the mean difference,
    its standard error and the z-score (difference / stderr).
    """
    generic = [r for r in rows if r["family"] == "random" and r["class"] == "Generic"]
    special = [r for r in rows if r["family"] in families]
    if not generic or not special:
        return None
    gcad = np.array([r["cad"] for r in generic])
    gval = np.array([r[key] for r in generic])
    diffs, svals, mvals = [], [], []
    for r in special:
        nearest = np.argsort(np.abs(gcad - r["cad"]), kind="stable")[:k]
        matched = float(gval[nearest].mean())
        svals.append(r[key])
        mvals.append(matched)
        diffs.append(matched - r[key])
    diffs = np.array(diffs)
    stderr = float(diffs.std(ddof=1) / math.sqrt(diffs.size)) if diffs.size > 1 else math.inf
    return {"special_mean": float(np.mean(svals)), "generic_mean": float(np.mean(mvals)),
            "difference": float(diffs.mean()), "stderr": stderr,
            "z": float(diffs.mean() / stderr) if stderr > 0 else math.inf, "n": int(diffs.size)}


# ---------------------------------------------------------------------------
# verification suites


def _prop(name, passed, statistic, threshold, **extra):
    out = {"name": name, "pass": bool(passed), "statistic": statistic, "threshold": threshold}
    out.update(extra)
    return out


def _gap(a, b):
    """``(a.value - b.value, combined stderr)``."""
    return a.value - b.value, math.sqrt(a.stderr**2 + b.stderr**2)


def find_elementwise_decrease(dim, seed, max_tries=10_000):
    """Search for ``(phi, psi, g1, g2)`` whose disagreement shrinks after appending ``psi``."""
    for i in range(max_tries):
        gen = rng_mod.stream(seed, i, tag=rng_mod.SEARCH)
        phi = samplers.random_stochastic(dim, gen)
        psi = samplers.random_stochastic(dim, gen)
        g1 = samplers.sample_simplex(dim, gen)
        g2 = samplers.sample_simplex(dim, gen)
        try:
            before = measures.disagreement(phi, g1, g2)
            after = measures.disagreement(psi @ phi, g1, g2)
        except SingularPushforward:
            continue
        if after < before - 1e-12:
            return {"index": i, "before": before, "after": after, "phi": phi.tolist(),
                    "psi": psi.tolist(), "g1": g1.tolist(), "g2": g2.tolist()}
    return None


def check_dpi(cfg, pairs=None, quantum_pairs=None):
    """Concatenation never lowers subjectivity beyond the 3-stderr band; returns ``(properties, violations)``."""
    if pairs is None:
        pairs = cfg.count or 200
    if quantum_pairs is None:
        quantum_pairs = cfg.quantum_count or 0
    props, violations = [], []
    c = cfg.integration("classical", normalize=False)
    worst = math.inf
    for i in range(pairs):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL)
        phi = samplers.random_stochastic(cfg.dim, gen)
        psi = samplers.random_stochastic(cfg.dim, gen)
        gap, err = _gap(measures.classical_subjectivity(psi @ phi, c), measures.classical_subjectivity(phi, c))
        worst = min(worst, gap / err if err > 0 else math.inf)
        if gap < -3.0 * err:
            violations.append({"kind": "classical", "index": i, "gap": gap, "stderr": err})
    props.append(_prop(f"classical DPI d={cfg.dim}", not any(v["kind"] == "classical" for v in violations),
                       worst, -3.0, pairs=pairs, unit="min gap / combined stderr"))
    if quantum_pairs:
        q = cfg.integration("quantum", normalize=False)
        worst = math.inf
        for i in range(quantum_pairs):
            gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=1)
            f = samplers.random_channel(2, gen)
            g = samplers.random_channel(2, gen)
            gap, err = _gap(measures.quantum_subjectivity(quantum.compose_channels(g, f), q),
                            measures.quantum_subjectivity(f, q))
            worst = min(worst, gap / err if err > 0 else math.inf)
            if gap < -3.0 * err:
                violations.append({"kind": "quantum", "index": i, "gap": gap, "stderr": err})
        props.append(_prop("quantum DPI d=2", not any(v["kind"] == "quantum" for v in violations),
                           worst, -3.0, pairs=quantum_pairs, unit="min gap / combined stderr"))
    found = find_elementwise_decrease(cfg.dim, cfg.seed)
    props.append(_prop("element-wise disagreement decrease exists", found is not None,
                       None if found is None else found["before"] - found["after"], 0.0, example=found))
    return props, violations


def check_composition_invariance(cfg, instances=None, quantum_instances=None):
    """Bijections and unitaries preserve subjectivity; anything after an erasure keeps the erasure value."""
    n = (cfg.count or 50) if instances is None else instances
    nq = (cfg.quantum_count or 0) if quantum_instances is None else quantum_instances
    c = cfg.integration("classical", normalize=False)
    q = cfg.integration("quantum", normalize=False)
    d = cfg.dim
    props, violations = [], []

    def record(name, pairs):
        worst = max((abs(g) / e if e > 0 else (0.0 if abs(g) < 1e-12 else math.inf)) for g, e in pairs)
        bad = [i for i, (g, e) in enumerate(pairs) if abs(g) > 3.0 * e + 1e-12]
        violations.extend({"relation": name, "index": i} for i in bad)
        props.append(_prop(name, not bad, worst, 3.0, instances=len(pairs), unit="max |gap| / combined stderr"))

    rel1, rel3 = [], []
    for i in range(n):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=2)
        phi = samplers.random_stochastic(d, gen)
        perm = samplers.permutation_matrix(gen.permutation(d))
        tau = samplers.sample_simplex(d, gen)
        erasure = np.repeat(tau[:, None], d, axis=1)
        rel1.append(_gap(measures.classical_subjectivity(perm @ phi, c), measures.classical_subjectivity(phi, c)))
        rel3.append(_gap(measures.classical_subjectivity(phi @ erasure, c),
                         measures.classical_subjectivity(erasure, c)))
    if n:
        record("I(Phi o phi) = I(phi)", rel1)
        record("I(phi o E) = I(E)", rel3)
    rel2, rel4 = [], []
    for i in range(nq):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=3)
        f = samplers.random_channel(2, gen)
        u = quantum.unitary_channel(samplers.haar_unitary(2, gen))
        w = quantum.erasure_channel(quantum.random_density(2, gen, min_eig=1e-3))
        rel2.append(_gap(measures.quantum_subjectivity(quantum.compose_channels(u, f), q),
                         measures.quantum_subjectivity(f, q)))
        rel4.append(_gap(measures.quantum_subjectivity(quantum.compose_channels(f, w), q),
                         measures.quantum_subjectivity(w, q)))
    if nq:
        record("I(U o F) = I(F)", rel2)
        record("I(F o W) = I(W)", rel4)
    return props, violations


def check_extremal(cfg, permutations=50, dims=(2, 3, 4), unitaries=10, tol=1e-8):
    """Permutations and unitaries have zero normalized subjectivity."""
    worst = 0.0
    for i in range(permutations):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=4)
        d = dims[i % len(dims)]
        perm = samplers.permutation_matrix(gen.permutation(d))
        worst = max(worst, abs(measures.classical_subjectivity(perm, cfg.integration("classical")).value))
    props = []
    if permutations:
        props.append(_prop("permutations have zero subjectivity", worst <= tol, worst, tol,
                           instances=permutations))
    if not unitaries:
        return props
    worst = 0.0
    for i in range(unitaries):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=5)
        u = quantum.unitary_channel(samplers.haar_unitary(2, gen))
        worst = max(worst, abs(measures.quantum_subjectivity(u, cfg.integration("quantum")).value))
    props.append(_prop("unitaries have zero subjectivity", worst <= tol, worst, tol, instances=unitaries))
    return props


def check_erasures(cfg, classical_count=10, dims=(2, 3), quantum_count=5):
    """Erasures share one subjectivity value and normalize to 1."""
    props = []
    for d in dims:
        ests = []
        for i in range(classical_count):
            gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=10 + d)
            tau = samplers.sample_simplex(d, gen)
            ests.append(measures.classical_subjectivity(np.repeat(tau[:, None], d, axis=1),
                                                        cfg.integration("classical")))
        props.extend(_erasure_props(f"classical d={d}", ests))
    if quantum_count < 2:
        return props
    ests = []
    for i in range(quantum_count):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=20)
        tau = quantum.random_density(2, gen, min_eig=1e-3)
        ests.append(measures.quantum_subjectivity(quantum.erasure_channel(tau), cfg.integration("quantum")))
    props.extend(_erasure_props("quantum d=2", ests))
    return props


def _erasure_props(label, ests):
    pair = max(abs(a.value - b.value) / max(math.hypot(a.stderr, b.stderr), 1e-300)
               for i, a in enumerate(ests) for b in ests[i + 1:])
    unit = max(abs(e.value - 1.0) / max(e.stderr, 1e-300) for e in ests)
    return [_prop(f"erasures agree pairwise ({label})", pair <= 3.0, pair, 3.0),
            _prop(f"normalized erasure equals 1 ({label})", unit <= 3.0, unit, 3.0)]


def cfd_bounds(d, n):
    lo = math.sqrt((d - n) / ((d - 1) * n))
    hi = math.sqrt((d - n) * (d + 1 - n) / ((d - 1) * d))
    return lo, hi


def random_absorber(d, n, gen):
    """Random ``(d, n)`` absorber with random relabelling and absorbing-space permutation."""
    m = d - n
    while True:
        cols = gen.dirichlet(np.ones(d), size=m).T
        R, Q = cols[:n], cols[n:]
        if np.any(R > 1e-9) and abs(np.linalg.det(np.eye(m) - Q)) > 1e-9:
            break
    return samplers.construct_absorbing(d, n, R, Q, gen.permutation(d), gen.permutation(n)), R, Q


def check_absorbing(cfg, count=200, tol=1e-9):
    """Geometry of absorbing maps and the structure of their Bayes inverses."""
    props = []
    worst_lo, worst_hi, ok = math.inf, math.inf, True
    for i in range(count):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=30)
        d = int(gen.integers(3, 6))
        n = int(gen.integers(1, d))
        m, _, _ = random_absorber(d, n, gen)
        lo, hi = cfd_bounds(d, n)
        value = classical.cfd(m)
        worst_lo = min(worst_lo, value - lo)
        worst_hi = min(worst_hi, hi - value)
        if n == 1:
            ok &= abs(value - 1.0) <= tol
        else:
            ok &= lo - tol <= value < hi
    props.append(_prop("absorber cfd within bounds", ok, min(worst_lo, worst_hi), -tol, instances=count))

    worst = 0.0
    for i in range(count):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=31)
        p, q = _split(gen)
        worst = max(worst, abs(classical.cfd(samplers.alternating_absorber(p, q, gen.permutation(3))) - 0.5))
    props.append(_prop("alternating absorbers have cfd 0.5", worst <= tol, worst, tol))

    worst = 0.0
    for i in range(count):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=32)
        d = int(gen.integers(2, 6))
        m, _, _ = random_absorber(d, 1, gen)
        worst = max(worst, abs(classical.cfd(m) - 1.0))
    props.append(_prop("deterministic absorbers have cfd 1", worst <= tol, worst, tol))

    pattern_ok, equiv_ok = True, True
    for i in range(count):
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.CHANNEL, subindex=33)
        d = int(gen.integers(3, 6))
        n = int(gen.integers(1, d))
        mm = d - n
        diagonal = bool(i % 2)
        while True:
            R = gen.dirichlet(np.ones(n + 1), size=mm).T[:n]
            if diagonal:
                Q = np.diag(1.0 - R.sum(axis=0))
            else:
                Q = gen.dirichlet(np.ones(mm), size=mm).T * (1.0 - R.sum(axis=0))[None, :]
            if np.any(R > 1e-9) and abs(np.linalg.det(np.eye(mm) - Q)) > 1e-9:
                break
        m = samplers.construct_absorbing(d, n, R, Q)
        all_absorbing = True
        for _ in range(5):
            g = samplers.sample_simplex(d, gen)
            inv = classical.bayes_inverse(m, g)
            pattern_ok &= bool(np.all(np.abs(inv[:n, n:]) < tol))
            pattern_ok &= bool(np.allclose(inv[:n, :n], np.diag(g[:n] / (m @ g)[:n]), atol=1e-12))
            all_absorbing &= bool(np.allclose(inv[n:, n:], np.eye(mm), atol=1e-9))
        equiv_ok &= all_absorbing == (diagonal or mm == 1)
    props.append(_prop("absorber inverses have zero upper-right block", pattern_ok, None, tol))
    props.append(_prop("diagonal Q iff inverse absorbs onto the transient space", equiv_ok, None, tol))

    z = np.array([[1.0, 0.5], [0.0, 0.5]])
    inv = classical.bayes_inverse(z, [0.5, 0.5])
    err = float(np.max(np.abs(inv - np.array([[2 / 3, 0.0], [1 / 3, 1.0]]))))
    props.append(_prop("Z-channel Bayes inverse closed form", err <= 1e-12, err, 1e-12))
    return props


def z_channel_petz_error(s=0.5, priors=(0.2, 0.5, 0.7), states=(0.1, 0.6, 0.9)):
    """Largest deviation of the amplitude-damping Petz map from the classical Z-channel inverse on diagonal inputs."""
    kraus = np.array([[[1, 0], [0, math.sqrt(1 - s)]], [[0, math.sqrt(s)], [0, 0]]], dtype=complex)
    worst = 0.0
    for p in priors:
        petz = quantum.petz_inverse(kraus, np.diag([p, 1 - p]))
        for q in states:
            out = quantum.apply_channel(petz, np.diag([q, 1 - q]))
            top = p * q / (p + (1 - p) * s)
            worst = max(worst, float(np.max(np.abs(out - np.diag([top, 1 - top])))))
    return worst


def verify_suite(cfg, suite):
    """Run a named suite and return the report dict; ``report['pass']`` is the overall verdict."""
    start = time.perf_counter()
    if suite == "dpi":
        props, violations = check_dpi(cfg)
    elif suite == "theorems":
        cfg = replace(cfg, count=cfg.count or 20)
        nq = cfg.quantum_count or 0
        props = check_extremal(cfg, permutations=cfg.count, dims=(cfg.dim,), unitaries=nq)
        props += check_erasures(cfg, dims=(cfg.dim,), quantum_count=min(nq, 5))
        more, violations = check_composition_invariance(cfg)
        props += more
    elif suite == "absorbing":
        props, violations = check_absorbing(cfg, count=cfg.count or 200), []
        err = z_channel_petz_error()
        props.append(_prop("amplitude-damping Petz map matches the Z-channel inverse", err <= 1e-10, err, 1e-10))
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return {"suite": suite, "seed": cfg.seed,
            "budgets": {"samples": cfg.samples, "quantum_samples": cfg.quantum_samples,
                        "count": cfg.count, "quantum_count": cfg.quantum_count, "dim": cfg.dim},
            "properties": props, "violations": violations,
            "pass": all(p["pass"] for p in props), "seconds": time.perf_counter() - start}
