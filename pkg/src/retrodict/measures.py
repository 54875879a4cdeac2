"""Irreversibility measures: Bayesian subjectivity and average change in divergence.

Both are Monte Carlo integrals over pairs of reference priors. Every sample
draws from its own counter-based stream keyed by ``(seed, sample index)``, so
estimates do not depend on the number of workers.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict
from functools import lru_cache
import json
import math
import os
import threading

import numpy as np

from . import classical, kernels, quantum, rng as rng_mod
from .errors import DimensionMismatch, SingularPushforward

QUANTUM_MIN_EIG = 1e-6
SUPPORT_TOL = 1e-12
MAX_ATTEMPTS = 10_000


@dataclass(frozen=True)
class MeasureEstimate:
    """Monte Carlo estimate with its standard error and rejection count."""

    value: float
    stderr: float
    nsamples: int
    seed: int
    normalized: bool = False
    rejected: int = 0

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class IntegrationConfig:
    """Sampling budget and numerical settings for the integrals.

    ``npairs=None`` picks 2000 for classical maps and 200 for quantum channels.
    """

    npairs: int = None
    seed: int = 0
    eps: float = 1e-9
    restarts: int = 16
    normalize: bool = False
    workers: int = 1
    cache_path: str = None

    def __post_init__(self):
        if self.npairs is not None and self.npairs < 2:
            raise ValueError("npairs must be at least 2")
        if self.eps <= 0 or self.restarts < 1 or self.workers < 1:
            raise ValueError("eps, restarts and workers must be positive")

    def pairs(self, kind):
        if self.npairs is not None:
            return self.npairs
        return 2000 if kind == "classical" else 200


def _estimate(samples, cfg, rejected, normalized=False):
    samples = np.asarray(samples, dtype=float)
    n = samples.size
    stderr = float(samples.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return MeasureEstimate(float(samples.mean()), stderr, n, int(cfg.seed), normalized, int(rejected))


def _map_indices(fn, n, workers):
    """``[fn(i) for i in range(n)]``, optionally spread over threads; order is preserved."""
    if workers <= 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n), chunksize=max(1, n // (4 * workers))))


# ---------------------------------------------------------------------------
# divergences


def kl_divergence(p, q):
    """Kullback-Leibler divergence in nats; ``inf`` when ``p`` is not dominated by ``q``."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise DimensionMismatch(f"shape mismatch {p.shape} vs {q.shape}")
    mask = p > 0
    if np.any(q[mask] <= 0):
        return math.inf
    return max(0.0, float(np.sum(p[mask] * np.log(p[mask] / q[mask]))))


def umegaki_divergence(rho, gamma, tol=SUPPORT_TOL):
    """Quantum relative entropy ``Tr[rho ln rho - rho ln gamma]`` in nats."""
    rho = np.asarray(rho, dtype=complex)
    gamma = np.asarray(gamma, dtype=complex)
    if rho.shape != gamma.shape:
        raise DimensionMismatch(f"shape mismatch {rho.shape} vs {gamma.shape}")
    wr = np.linalg.eigvalsh(rho)
    wg, vg = np.linalg.eigh(gamma)
    weights = np.real(np.einsum("ij,ik,kj->j", vg.conj(), rho, vg))
    outside = wg <= tol
    if np.any(weights[outside] > tol):
        return math.inf
    wr = wr[wr > tol]
    entropy_term = float(np.sum(wr * np.log(wr)))
    cross = float(np.sum(weights[~outside] * np.log(wg[~outside])))
    return max(0.0, entropy_term - cross)


# ---------------------------------------------------------------------------
# diamond norm


def _diamond_objective(m, j4):
    """Trace norm of ``(1 (x) M) J (1 (x) M^dagger)`` for a batch of ``M`` plus its sign operators."""
    r, d, _ = m.shape
    x = np.einsum("rba,satc,rec->rsbte", m, j4, m.conj()).reshape(r, d * d, d * d)
    x = 0.5 * (x + x.conj().transpose(0, 2, 1))
    w, v = np.linalg.eigh(x)
    signs = np.einsum("rij,rj,rkj->rik", v, np.sign(w), v.conj()).reshape(r, d, d, d, d)
    return np.abs(w).sum(axis=1), signs


def _normalize_rows(m):
    return m / np.linalg.norm(m.reshape(m.shape[0], -1), axis=1)[:, None, None]


def _ancilla_free_bound(j4, starts, tol, maxiter):
    """Best ``||Delta(|phi><phi|)||_1`` over pure inputs without an ancilla."""
    d = j4.shape[0]
    phi = starts / np.linalg.norm(starts, axis=1, keepdims=True)
    best_val, best_phi = -1.0, None
    for vec in phi:
        val = -1.0
        for _ in range(maxiter):
            out = np.einsum("satc,a,c->st", j4, vec, vec.conj())
            w, v = np.linalg.eigh(0.5 * (out + out.conj().T))
            new_val = float(np.abs(w).sum())
            if new_val <= val + tol:
                val = max(val, new_val)
                break
            val = new_val
            sign = (v * np.sign(w)) @ v.conj().T
            # phi^dagger B phi with B[c, a] = sum_st J[s,a,t,c] S[t,s] linearizes the objective
            b = np.einsum("satc,ts->ca", j4, sign)
            b = 0.5 * (b + b.conj().T)
            vec = np.linalg.eigh(b)[1][:, -1].conj()
        if val > best_val:
            best_val, best_phi = val, vec
    return best_val, best_phi


def _choi4(kraus):
    return np.einsum("ksa,ktc->satc", kraus, kraus.conj())


def diamond_norm_distance(a, b, cfg=None, rng=None, tol=1e-8, maxiter=500, return_bound=False):
    """Diamond-norm distance between two channels on the same space.

    Maximizes the trace norm of ``((a - b) (x) id)(|psi><psi|)`` over pure
    states with a ``d``-dimensional ancilla, writing ``|psi> = (1 (x) M)|Omega>``
    with ``||M||_F = 1``. Each restart alternates the exact maximizer of the
    sign-linearized objective (top eigenvector of a quadratic form in ``M``)
    with projected gradient steps with step halving once that stalls. One
    restart starts from the best product input, so the result never falls
    below the ancilla-free bound.

    Parameters
    ----------
    a, b : array_like
        Kraus sets of shape ``(k, d, d)``.
    cfg : IntegrationConfig, optional
        Supplies the restart count and the seed of the default stream.
    rng : numpy.random.Generator, optional
        Source of the random starting points.
    return_bound : bool
        Also return the ancilla-free lower bound.
    """
    cfg = cfg or IntegrationConfig()
    a = quantum.as_kraus(a)
    b = quantum.as_kraus(b)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatch(f"channels act on dimensions {a.shape[1]} and {b.shape[1]}")
    d = a.shape[1]
    if rng is None:
        rng = rng_mod.stream(cfg.seed, tag=rng_mod.DIAMOND)
    j4 = _choi4(a) - _choi4(b)
    if np.max(np.abs(j4)) < 1e-15:
        return (0.0, 0.0) if return_bound else 0.0

    nfree = max(2, cfg.restarts // 4)
    starts = rng.standard_normal((nfree, d)) + 1j * rng.standard_normal((nfree, d))
    bound, phi = _ancilla_free_bound(j4, starts, tol * 1e-2, maxiter)

    r = cfg.restarts
    m = rng.standard_normal((r, d, d)) + 1j * rng.standard_normal((r, d, d))
    m[0] = 0.0
    m[0, 0, :] = phi
    m = _normalize_rows(m)
    f, signs = _diamond_objective(m, j4)
    active = np.ones(r, dtype=bool)
    for _ in range(maxiter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        q = np.einsum("satc,rtesb->recba", j4, signs[idx]).reshape(idx.size, d * d, d * d)
        q = 0.5 * (q + q.conj().transpose(0, 2, 1))
        cand = np.linalg.eigh(q)[1][:, :, -1].reshape(idx.size, d, d)
        fc, sc = _diamond_objective(cand, j4)
        gain = fc - f[idx]
        up = gain > 0
        m[idx[up]], f[idx[up]], signs[idx[up]] = cand[up], fc[up], sc[up]
        stalled = idx[gain < tol]
        if stalled.size:
            moved = _gradient_step(m, f, signs, stalled, j4, tol)
            active[stalled[~moved]] = False
    best = float(f.max())
    if best < bound - 1e-12:
        raise AssertionError(f"diamond estimate {best} fell below the ancilla-free bound {bound}")
    best = max(best, bound)
    return (best, bound) if return_bound else best


def _gradient_step(m, f, signs, idx, j4, tol, halvings=12):
    """Projected gradient ascent step with step halving; updates in place, returns success mask."""
    grad = np.einsum("rba,satc,rtesb->rec", m[idx], j4, signs[idx])
    radial = np.real(np.einsum("rij,rij->r", m[idx].conj(), grad))
    grad = grad - radial[:, None, None] * m[idx]
    moved = np.zeros(idx.size, dtype=bool)
    eta = 1.0
    for _ in range(halvings):
        todo = np.flatnonzero(~moved)
        if todo.size == 0:
            break
        cand = _normalize_rows(m[idx[todo]] + eta * grad[todo])
        fc, sc = _diamond_objective(cand, j4)
        ok = fc - f[idx[todo]] >= tol
        hit = idx[todo[ok]]
        m[hit], f[hit], signs[hit] = cand[ok], fc[ok], sc[ok]
        moved[todo[ok]] = True
        eta *= 0.5
    return moved


# ---------------------------------------------------------------------------
# prior sampling


def _classical_priors(m, seed, index, eps, tag=rng_mod.PRIOR):
    """Two flat-Dirichlet priors whose pushforwards clear ``eps``, plus the rejection count."""
    gen = rng_mod.stream(seed, index, tag=tag)
    d = m.shape[0]
    alpha = np.ones(d)
    for attempt in range(MAX_ATTEMPTS):
        g1 = gen.dirichlet(alpha)
        g2 = gen.dirichlet(alpha)
        if min((m @ g1).min(), (m @ g2).min(), g1.min(), g2.min()) > eps:
            return g1, g2, attempt
    raise SingularPushforward(f"sample {index}: no admissible prior pair after {MAX_ATTEMPTS} draws")


@lru_cache(maxsize=32)
def _first_draws(seed, tag, d, n, workers):
    """First-attempt Dirichlet pairs of every sample stream, shared by all maps of one run."""
    alpha = np.ones(d)

    def one(i):
        gen = rng_mod.stream(seed, i, tag=tag)
        return gen.dirichlet(alpha), gen.dirichlet(alpha)

    draws = _map_indices(one, n, workers)
    g1 = np.array([x[0] for x in draws])
    g2 = np.array([x[1] for x in draws])
    g1.setflags(write=False)
    g2.setflags(write=False)
    return g1, g2


def _prior_pairs(m, cfg, n, eps, tag):
    """Admissible prior pairs for every sample, identical to drawing each stream afresh."""
    base1, base2 = _first_draws(int(cfg.seed), tag, m.shape[0], n, cfg.workers)
    ok = np.minimum.reduce([(base1 @ m.T).min(axis=1), (base2 @ m.T).min(axis=1),
                            base1.min(axis=1), base2.min(axis=1)]) > eps
    g1, g2 = base1.copy(), base2.copy()
    rejected = 0
    for i in np.flatnonzero(~ok):
        g1[i], g2[i], r = _classical_priors(m, cfg.seed, i, eps, tag)
        rejected += r
    return g1, g2, rejected


def _hs_state(gen, d):
    g = gen.standard_normal((d, d)) + 1j * gen.standard_normal((d, d))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def _quantum_priors(kraus, seed, index, eps):
    """Two Hilbert-Schmidt states, full rank above 1e-6, with nonsingular pushforwards."""
    gen = rng_mod.stream(seed, index, tag=rng_mod.PRIOR)
    d = kraus.shape[1]
    for attempt in range(MAX_ATTEMPTS):
        g1 = _hs_state(gen, d)
        g2 = _hs_state(gen, d)
        ok = True
        for g in (g1, g2):
            if np.linalg.eigvalsh(g)[0] < QUANTUM_MIN_EIG:
                ok = False
                break
            out = np.einsum("kij,jl,kml->im", kraus, g, kraus.conj())
            if np.linalg.eigvalsh(0.5 * (out + out.conj().T))[0] <= eps:
                ok = False
                break
        if ok:
            return g1, g2, attempt
    raise SingularPushforward(f"sample {index}: no admissible prior pair after {MAX_ATTEMPTS} draws")


# ---------------------------------------------------------------------------
# subjectivity


def disagreement(m, g1, g2, eps=classical.EPS):
    """Spectral-norm distance between the Bayes inverses of ``m`` at two priors."""
    return classical.spectral_norm_distance(classical.bayes_inverse(m, g1, eps),
                                            classical.bayes_inverse(m, g2, eps))


def classical_subjectivity_samples(m, cfg):
    """Integrand values and the rejection count for the classical subjectivity."""
    m = classical.as_stochastic(m)
    g1, g2, rejected = _prior_pairs(m, cfg, cfg.pairs("classical"), cfg.eps, rng_mod.PRIOR)
    return kernels.disagreement_batch(m, g1, g2), rejected


def classical_subjectivity(m, cfg=None):
    """Bayesian subjectivity of a classical map: mean disagreement over prior pairs."""
    cfg = cfg or IntegrationConfig()
    m = classical.as_stochastic(m)
    samples, rejected = classical_subjectivity_samples(m, cfg)
    est = _estimate(samples, cfg, rejected)
    if cfg.normalize:
        est = _normalize(est, erasure_reference_value(m.shape[0], cfg, "classical"))
    return est


def quantum_subjectivity_samples(kraus, cfg):
    kraus = quantum.as_kraus(kraus)
    n = cfg.pairs("quantum")

    def one(i):
        g1, g2, rej = _quantum_priors(kraus, cfg.seed, i, cfg.eps)
        p1 = quantum.petz_inverse(kraus, g1, cfg.eps)
        p2 = quantum.petz_inverse(kraus, g2, cfg.eps)
        gen = rng_mod.stream(cfg.seed, i, tag=rng_mod.DIAMOND)
        return diamond_norm_distance(p1, p2, cfg, rng=gen), rej

    out = _map_indices(one, n, cfg.workers)
    return np.array([x[0] for x in out]), sum(x[1] for x in out)


def quantum_subjectivity(kraus, cfg=None):
    """Bayesian subjectivity of a channel: mean diamond distance between Petz inverses."""
    cfg = cfg or IntegrationConfig()
    kraus = quantum.as_kraus(kraus)
    samples, rejected = quantum_subjectivity_samples(kraus, cfg)
    est = _estimate(samples, cfg, rejected)
    if cfg.normalize:
        est = _normalize(est, erasure_reference_value(kraus.shape[1], cfg, "quantum"))
    return est


# ---------------------------------------------------------------------------
# average change in divergence


def classical_divchange_samples(m, cfg):
    m = classical.as_stochastic(m)
    p, g, rejected = _prior_pairs(m, cfg, cfg.pairs("classical"), 0.0, rng_mod.STATE)
    vals = kernels.divergence_change_batch(m, p, g)
    finite = np.isfinite(vals)
    return vals[finite], rejected + int(np.sum(~finite))


def classical_avg_div_change(m, cfg=None):
    """Mean of ``KL(p||g) - KL(m p||m g)`` over independent flat-Dirichlet pairs."""
    cfg = cfg or IntegrationConfig()
    m = classical.as_stochastic(m)
    samples, rejected = classical_divchange_samples(m, cfg)
    est = _estimate(samples, cfg, rejected)
    if cfg.normalize:
        est = _normalize(est, erasure_reference_value(m.shape[0], cfg, "classical", "divergence"))
    return est


def quantum_divchange_samples(kraus, cfg):
    kraus = quantum.as_kraus(kraus)
    n = cfg.pairs("quantum")

    def one(i):
        rho, gamma, rej = _quantum_priors(kraus, cfg.seed, i, 0.0)
        before = umegaki_divergence(rho, gamma)
        after = umegaki_divergence(quantum.apply_channel(kraus, rho), quantum.apply_channel(kraus, gamma))
        return before - after, rej

    out = _map_indices(one, n, cfg.workers)
    vals = np.array([x[0] for x in out])
    finite = np.isfinite(vals)
    return vals[finite], sum(x[1] for x in out) + int(np.sum(~finite))


def quantum_avg_div_change(kraus, cfg=None):
    """Mean Umegaki divergence lost under the channel over Hilbert-Schmidt pairs."""
    cfg = cfg or IntegrationConfig()
    kraus = quantum.as_kraus(kraus)
    samples, rejected = quantum_divchange_samples(kraus, cfg)
    est = _estimate(samples, cfg, rejected)
    if cfg.normalize:
        est = _normalize(est, erasure_reference_value(kraus.shape[1], cfg, "quantum", "divergence"))
    return est


# ---------------------------------------------------------------------------
# erasure normalization


_CACHE = {}
_CACHE_LOCK = threading.Lock()


def _normalize(est, ref):
    # the reference's own Monte Carlo error is not propagated
    return MeasureEstimate(est.value / ref.value, est.stderr / ref.value, est.nsamples,
                           est.seed, True, est.rejected)


def uniform_erasure(d):
    return np.full((d, d), 1.0 / d)


def _cache_key(dim, cfg, kind, measure):
    return (f"{kind}/{measure}/d={dim}/seed={cfg.seed}/n={cfg.pairs(kind)}"
            f"/eps={cfg.eps:g}/restarts={cfg.restarts}")


def _read_cache_file(path):
    if not path or not os.path.exists(path):
        return {}
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def erasure_reference_value(dim, cfg=None, kind="classical", measure="subjectivity"):
    """Measure of the erasure to the uniform (or maximally mixed) state, cached per configuration.

    ``measure`` is ``"subjectivity"`` or ``"divergence"``. Results live in an
    in-process cache and, when ``cfg.cache_path`` is set, in a JSON file.
    """
    if dim < 2:
        raise ValueError("dimension must be at least 2")
    if kind not in ("classical", "quantum") or measure not in ("subjectivity", "divergence"):
        raise ValueError(f"unknown reference {kind}/{measure}")
    cfg = cfg or IntegrationConfig()
    key = _cache_key(dim, cfg, kind, measure)
    with _CACHE_LOCK:
        if key in _CACHE:
            return _CACHE[key]
        stored = _read_cache_file(cfg.cache_path).get(key)
    if stored is not None:
        est = MeasureEstimate(stored["value"], stored["stderr"], stored["nsamples"], cfg.seed, False, 0)
    else:
        raw = IntegrationConfig(cfg.npairs, cfg.seed, cfg.eps, cfg.restarts, False, cfg.workers, None)
        if kind == "classical":
            fn = classical_subjectivity if measure == "subjectivity" else classical_avg_div_change
            est = fn(uniform_erasure(dim), raw)
        else:
            fn = quantum_subjectivity if measure == "subjectivity" else quantum_avg_div_change
            est = fn(quantum.erasure_channel(np.eye(dim) / dim), raw)
        if cfg.cache_path:
            with _CACHE_LOCK:
                data = _read_cache_file(cfg.cache_path)
                data[key] = {"value": est.value, "stderr": est.stderr, "nsamples": est.nsamples}
                tmp = f"{cfg.cache_path}.tmp"
                with open(tmp, "w", encoding="utf-8") as fh:
                    json.dump(data, fh, indent=1, sort_keys=True)
                os.replace(tmp, cfg.cache_path)
    with _CACHE_LOCK:
        _CACHE[key] = est
    return est
