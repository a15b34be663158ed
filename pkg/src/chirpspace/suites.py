"""Named verification suites behind the ``verify`` command.

Each suite runs a handful of residual checks at desk scale and reports one
``CaseResult`` per check, tagged with a human-readable label of the identity
being exercised.  All computations are seeded and deterministic; reports are
byte-stable apart from the runtime fields.
"""
from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import closedform, quantum, xform
from .grid import PhaseGrid, SampledField, Signal, make_axis, sample_field
from .hermite import hermite_functions

__all__ = [
    "RunConfig",
    "CaseResult",
    "VerificationReport",
    "SUITE_NAMES",
    "run_suite",
]


@dataclass
class RunConfig:
    """Resolved parameters for a verification run (defaults are desk scale)."""

    # random-field family for round-trip / norm checks
    field_extent: float = 6.0
    field_n: int = 128
    mid_extent: float = 10.0
    mid_n: int = 216
    n_fields: int = 3
    damp: float = 0.6
    seed: int = 20240701
    # Gaussian closed-form checks
    gaussian_lambdas: tuple[float, ...] = (0.5, 1.0, 2.0)
    gaussian_extent: float = 8.0
    gaussian_n: int = 161
    eval_extent: float = 2.0
    eval_n: int = 9
    # chirplet-to-kernel identity
    alphas: tuple[float, ...] = (np.pi / 3, np.pi / 2, 2 * np.pi / 3)
    epsilons: tuple[float, ...] = (0.1, 0.05, 0.02, 0.01)
    chirplet_extent: float = 25.0
    chirplet_n: int = 801
    # spectral oracle
    oracle_alphas: tuple[float, ...] = (0.3, 1.0, np.pi / 2, 2.0, 2.8)
    hermite_n_terms: int = 1600
    oracle_extent: float = 3.0
    oracle_n: int = 13
    composition_n_terms: int = 300
    # characteristic functions
    hermite_n_max: int = 48
    charfun_extent: float = 3.0
    charfun_n: int = 13
    # report
    tolerance_overrides: dict[str, float] = field(default_factory=dict)
    out_dir: str = "."

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        with open(path) as fh:
            raw = json.load(fh)
        cfg = cls()
        for key, val in raw.items():
            if not hasattr(cfg, key):
                raise ValueError(f"unknown config field {key!r}")
            cur = getattr(cfg, key)
            if isinstance(cur, tuple):
                val = tuple(val)
            setattr(cfg, key, val)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        for name in ("field_n", "mid_n", "gaussian_n", "eval_n", "chirplet_n", "oracle_n",
                     "charfun_n"):
            if getattr(self, name) < 2:
                raise ValueError(f"config field {name} must be >= 2")
        if self.n_fields < 1:
            raise ValueError("config field n_fields must be >= 1")
        for eps in self.epsilons:
            if not eps > 0:
                raise ValueError(f"config field epsilons must be > 0, got {eps}")
        for a in tuple(self.alphas) + tuple(self.oracle_alphas):
            if abs(np.sin(a)) < closedform.SIN_ALPHA_GUARD:
                raise ValueError(
                    f"config alpha {a} violates the singularity guard "
                    f"|sin alpha| >= {closedform.SIN_ALPHA_GUARD}"
                )
        if self.hermite_n_terms < 1 or self.hermite_n_max < 1:
            raise ValueError("hermite term counts must be >= 1")

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        for key, val in d.items():
            if isinstance(val, tuple):
                d[key] = list(val)
        return d


@dataclass
class CaseResult:
    name: str
    identity: str
    residual: float
    tolerance: float
    passed: bool
    runtime_ms: float


@dataclass
class VerificationReport:
    suite: str
    cases: list[CaseResult]
    overall_pass: bool
    config: dict

    def to_dict(self) -> dict:
        cases = []
        for c in self.cases:
            d = dataclasses.asdict(c)
            d["pass"] = d.pop("passed")
            cases.append(d)
        return {
            "suite": self.suite,
            "overall_pass": self.overall_pass,
            "config_echo": self.config,
            "cases": cases,
        }


def _case(cfg: RunConfig, name: str, identity: str, tolerance: float, fn) -> CaseResult:
    tol = cfg.tolerance_overrides.get(name, tolerance)
    t0 = time.perf_counter()
    residual = float(fn())
    ms = (time.perf_counter() - t0) * 1e3
    return CaseResult(name, identity, residual, tol, residual <= tol, ms)


def _memo(fn):
    box = {}

    def get():
        if "v" not in box:
            box["v"] = fn()
        return box["v"]

    return get


def _square_grid(extent: float, n: int) -> PhaseGrid:
    ax = make_axis(-extent, extent, n)
    return PhaseGrid(ax, ax)


def _random_fields(cfg: RunConfig):
    """Gaussian-damped random low-order polynomial fields (total degree <= 3)."""
    rng = np.random.default_rng(cfg.seed)
    grid = _square_grid(cfg.field_extent, cfg.field_n)
    P, Q = grid.meshes()
    damp = np.exp(-cfg.damp * (P**2 + Q**2))
    out = []
    for _ in range(cfg.n_fields):
        vals = np.zeros_like(P, dtype=complex)
        for i in range(4):
            for j in range(4 - i):
                vals += (rng.standard_normal() + 1j * rng.standard_normal()) * P**i * Q**j
        out.append(SampledField(grid, vals * damp))
    return grid, _square_grid(cfg.mid_extent, cfg.mid_n), out


# ---------------------------------------------------------------------------
# suites

def suite_roundtrip(cfg: RunConfig) -> list[CaseResult]:
    grid, mid, fields = _random_fields(cfg)
    label = "inverse(forward(h)) recovers h (transform invertibility)"

    def run(path):
        fwd = xform.forward_fast if path == "fast" else xform.forward_direct
        inv = xform.inverse_fast if path == "fast" else xform.inverse_direct
        worst = 0.0
        for h in fields:
            back = inv(fwd(h, mid), grid)
            worst = max(worst, np.linalg.norm(back.values - h.values)
                        / np.linalg.norm(h.values))
        return worst

    return [
        _case(cfg, "roundtrip-fast", label, 1e-6, lambda: run("fast")),
        _case(cfg, "roundtrip-direct", label, 1e-6, lambda: run("direct")),
    ]


def suite_parseval(cfg: RunConfig) -> list[CaseResult]:
    grid, mid, fields = _random_fields(cfg)
    label = "squared-norm preservation under the transform (Parseval)"

    def run():
        return max(xform.parseval_residual(h, mid) for h in fields)

    def run_hg():
        P, Q = grid.meshes()
        hg = SampledField(grid, (P + 1j * Q) * np.exp(-(P**2 + Q**2) / 2))
        return xform.parseval_residual(hg, mid)

    return [
        _case(cfg, "parseval-random", label, 1e-6, run),
        _case(cfg, "parseval-hermite-gaussian", label, 1e-6, run_hg),
    ]


def suite_gaussian(cfg: RunConfig) -> list[CaseResult]:
    grid = _square_grid(cfg.gaussian_extent, cfg.gaussian_n)
    out = _square_grid(cfg.eval_extent, cfg.eval_n)
    X, Y = out.meshes()
    label = "Gaussian maps to the closed-form Gaussian-chirp image"
    cases = []
    for lam in cfg.gaussian_lambdas:
        def run(lam=lam):
            h = sample_field(lambda P, Q: np.exp(-lam * (P**2 + Q**2)), grid)
            num = xform.forward_direct(h, out).values
            ref = closedform.gaussian_transform_closed(lam, X, Y)
            return np.abs(num - ref).max() / np.abs(ref).max()
        cases.append(_case(cfg, f"gaussian-lam-{lam:g}", label, 1e-6, run))
    return cases


def suite_chirplet_kernel(cfg: RunConfig) -> list[CaseResult]:
    out = _square_grid(cfg.eval_extent, cfg.eval_n)
    cgrid = _square_grid(cfg.chirplet_extent, cfg.chirplet_n)
    cases = []
    for alpha in cfg.alphas:
        def run_closed(alpha=alpha):
            return closedform.chirplet_identity_residual(alpha, 0.0, None, out).closed_form

        def run_monotone(alpha=alpha):
            rs = [closedform.chirplet_identity_residual(alpha, eps, cgrid, out).quadrature
                  for eps in sorted(cfg.epsilons, reverse=True)]
            ratios = [rs[i + 1] / rs[i] for i in range(len(rs) - 1)]
            return max(ratios) if ratios else 0.0

        cases.append(_case(
            cfg, f"chirplet-closed-{alpha:.4f}",
            "chirplet maps onto the scaled fractional-Fourier kernel (closed form)",
            1e-10, run_closed))
        cases.append(_case(
            cfg, f"chirplet-monotone-{alpha:.4f}",
            "regularized-chirplet quadrature residual decreases as damping shrinks",
            1.0, run_monotone))
    return cases


def suite_hermite_oracle(cfg: RunConfig) -> list[CaseResult]:
    xs = make_axis(-cfg.oracle_extent, cfg.oracle_extent, cfg.oracle_n).values
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    cases = []
    for alpha in cfg.oracle_alphas:
        def run(alpha=alpha):
            S = closedform.frft_kernel_hermite(alpha, X, Y, cfg.hermite_n_terms)
            return np.abs(S - closedform.frft_kernel(alpha, X, Y)).max()
        cases.append(_case(
            cfg, f"oracle-alpha-{alpha:.4f}",
            "kernel closed form agrees with the oscillator-eigenfunction series",
            1e-8, run))

    def run_comp():
        ts = make_axis(-20.0, 20.0, 801)
        tv = ts.values
        n = cfg.composition_n_terms
        xe = make_axis(-2.0, 2.0, 9).values
        Ka = closedform.frft_kernel_hermite(np.pi / 4, xe[:, None], tv[None, :], n)
        Kb = closedform.frft_kernel_hermite(np.pi / 4, tv[:, None], xe[None, :], n)
        w = np.ones(ts.n); w[0] = w[-1] = 0.5
        comp = (Ka * w) @ Kb * ts.step
        ref = closedform.frft_kernel(np.pi / 2, xe[:, None], xe[None, :])
        return np.abs(comp - ref).max()

    cases.append(_case(
        cfg, "oracle-composition",
        "kernel angles add under quadrature composition",
        1e-6, run_comp))
    return cases


def _weyl_test_symbol():
    hp = make_axis(-8.0, 8.0, 161)
    hq = make_axis(-9.0, 9.0, 289)
    grid = PhaseGrid(hp, hq)
    h = sample_field(
        lambda P, Q: (1 + 0.3 * P + 0.2j * Q + 0.1 * P * Q) * np.exp(-(P**2 + Q**2) / 2),
        grid)
    return h


def suite_weyl(cfg: RunConfig) -> list[CaseResult]:
    op_axis = make_axis(-9.0, 9.0, 145)      # step 1/8, midpoints land on 1/16
    out = PhaseGrid(make_axis(-6.0, 6.0, 97), make_axis(-6.0, 6.0, 97))

    def run_roundtrip():
        h = _weyl_test_symbol()
        K = quantum.weyl_quantize(h, op_axis, op_axis)
        back = quantum.weyl_symbol(K, out)
        ref = sample_field(
            lambda P, Q: (1 + 0.3 * P + 0.2j * Q + 0.1 * P * Q) * np.exp(-(P**2 + Q**2) / 2),
            out)
        return np.linalg.norm(back.values - ref.values) / np.linalg.norm(ref.values)

    def run_spectral():
        f = -np.log(3.0)
        grid = PhaseGrid(make_axis(-8.0, 8.0, 161), make_axis(-9.0, 9.0, 289))
        h = quantum.oscillator_exponential_symbol(f, grid)
        K = quantum.weyl_quantize(h, op_axis, op_axis)
        basis = quantum.make_hermite_basis(45, op_axis)
        ref = quantum.oscillator_exponential_kernel(f, basis)
        return np.abs(K.values - ref.values).max()

    return [
        _case(cfg, "weyl-roundtrip",
              "symbol -> operator -> symbol is the identity", 1e-6, run_roundtrip),
        _case(cfg, "weyl-spectral",
              "oscillator exponential quantizes to its eigenbasis kernel", 1e-6, run_spectral),
    ]


def suite_symbol_identity(cfg: RunConfig) -> list[CaseResult]:
    op_axis = make_axis(-8.0, 8.0, 257)      # step 1/16
    basis = quantum.make_hermite_basis(1, op_axis)
    sym_grid = PhaseGrid(make_axis(-6.0, 6.0, 129), make_axis(-6.0, 6.0, 97))
    out = PhaseGrid(make_axis(-7.0, 7.0, 225), make_axis(-7.0, 7.0, 225))
    cases = []
    for n in (0, 1):
        K = quantum.OperatorKernel(
            op_axis, op_axis, np.outer(basis.table[n], basis.table[n]).astype(complex))
        get = _memo(lambda K=K: quantum.symbol_identity_residual(K, sym_grid, out))
        cases.append(_case(
            cfg, f"symbol-identity-n{n}-transform",
            "transform of the symbol equals the scaled mixed matrix element",
            1e-6, lambda get=get: get().transform_side))
        cases.append(_case(
            cfg, f"symbol-identity-n{n}-inverse",
            "inverse transform of the mixed matrix element recovers the symbol",
            1e-6, lambda get=get: get().inverse_side))

    osc = quantum.oscillator_exponential_kernel(
        -np.log(3.0), quantum.make_hermite_basis(60, op_axis))
    get = _memo(lambda: quantum.symbol_identity_residual(osc, sym_grid, out))
    cases.append(_case(
        cfg, "symbol-identity-osc-transform",
        "transform of the symbol equals the scaled mixed matrix element",
        1e-6, lambda get=get: get().transform_side))
    cases.append(_case(
        cfg, "symbol-identity-osc-inverse",
        "inverse transform of the mixed matrix element recovers the symbol",
        1e-6, lambda get=get: get().inverse_side))
    return cases


def suite_kirkwood(cfg: RunConfig) -> list[CaseResult]:
    sax = make_axis(-8.0, 8.0, 257)
    table = hermite_functions(1, sax.values)
    wgrid = _square_grid(6.5, 209)
    out = PhaseGrid(make_axis(-5.0, 5.0, 161), make_axis(-5.0, 5.0, 161))
    cases = []
    for n in (0, 1):
        psi = Signal(sax, table[n].astype(complex))
        get = _memo(lambda psi=psi: quantum.wigner_to_kirkwood_residual(psi, wgrid, out))
        cases.append(_case(
            cfg, f"kirkwood-n{n}-qp",
            "transform of the Wigner function equals the Kirkwood-Rihaczek form",
            1e-6, lambda get=get: get().qp))
        cases.append(_case(
            cfg, f"kirkwood-n{n}-pq",
            "inverse-kernel transform equals the anti-ordered Kirkwood form",
            1e-6, lambda get=get: get().pq))
    return cases


def suite_charfun(cfg: RunConfig) -> list[CaseResult]:
    bax = make_axis(-12.0, 12.0, 241)
    basis = quantum.make_hermite_basis(cfg.hermite_n_max, bax)
    rho = quantum.OperatorKernel(
        bax, bax, np.outer(basis.table[0], basis.table[0]).astype(complex))
    uv = make_axis(-cfg.charfun_extent, cfg.charfun_extent, cfg.charfun_n).values

    def run_closed():
        worst = 0.0
        for u in uv:
            for v in uv:
                val = quantum.char_function_qp(rho, basis, u, v)
                ref = np.exp(-(u**2 + v**2) / 4) * np.exp(-1j * u * v / 2)
                worst = max(worst, abs(val - ref))
        return worst

    def run_trace():
        return abs(quantum.char_function_qp(rho, basis, 0.0, 0.0) - 1.0)

    def run_conj():
        worst = 0.0
        for u, v in ((0.7, -1.3), (2.0, 1.1), (-1.7, 0.4)):
            a = quantum.char_function_pq(rho, basis, u, v)
            b = quantum.char_function_qp(rho, basis, -u, -v)
            worst = max(worst, abs(a - np.conj(b)))
        return worst

    return [
        _case(cfg, "charfun-closed",
              "ground-state ordered characteristic function matches its closed form",
              1e-8, run_closed),
        _case(cfg, "charfun-trace",
              "characteristic function at the origin returns the trace", 1e-10, run_trace),
        _case(cfg, "charfun-conjugate",
              "anti-ordered characteristic function is the conjugate partner",
              1e-12, run_conj),
    ]


SUITE_BUILDERS = {
    "roundtrip": suite_roundtrip,
    "parseval": suite_parseval,
    "gaussian": suite_gaussian,
    "chirplet-kernel": suite_chirplet_kernel,
    "hermite-oracle": suite_hermite_oracle,
    "weyl": suite_weyl,
    "symbol-identity": suite_symbol_identity,
    "kirkwood": suite_kirkwood,
    "charfun": suite_charfun,
}

SUITE_NAMES = tuple(SUITE_BUILDERS) + ("all",)


def run_suite(name: str, cfg: RunConfig) -> VerificationReport:
    if name == "all":
        cases = []
        for builder in SUITE_BUILDERS.values():
            cases.extend(builder(cfg))
    elif name in SUITE_BUILDERS:
        cases = SUITE_BUILDERS[name](cfg)
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return VerificationReport(
        suite=name,
        cases=cases,
        overall_pass=all(c.passed for c in cases),
        config=cfg.to_dict(),
    )
