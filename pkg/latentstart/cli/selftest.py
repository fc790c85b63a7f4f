"""
Built-in invariant suite for ``latentstart selftest``.

Each check is small enough to run in well under a second; the full property
and experiment tests live in the test suite.
"""
import sys
from typing import Callable, List, Optional, TextIO, Tuple

import numpy as np

from ..core.ddim import ddim_inverse_step, ddim_step, invert, sample
from ..core.fourier import band_energy, fft2, highpass_of, ifft2, make_lowpass, reduce_band
from ..core.guidance import cfg_combine, dual_scale_combine, negative_combine
from ..core.metrics import FeatureSet, artfid_composite, frechet_gaussian
from ..core.models import isotropic_model
from ..core.schedule import build_schedule
from ..core.startpoint import frequency_manipulate
from ..errors import DiagnosticReporter, ErrorCode
from ..io import decode_raw, encode_raw
from ..types import FilterKind, FilterSpec
from ..utils import SeededRng, format_table

CheckResult = Tuple[bool, str]


def _rng(label: str) -> SeededRng:
    return SeededRng(0, f"selftest/{label}")


def check_fft_round_trip() -> CheckResult:
    g = _rng("fft").normal((16, 16, 3))
    err = float(np.max(np.abs(ifft2(fft2(g)) - g)))
    return err < 1e-10, f"max error {err:.2e}"


def check_parseval() -> CheckResult:
    g = _rng("parseval").normal((12, 10, 2))
    lhs = float(np.sum(g ** 2))
    rhs = float(np.sum(np.abs(fft2(g)) ** 2))
    rel = abs(lhs - rhs) / lhs
    return rel < 1e-9, f"relative gap {rel:.2e}"


def check_partition_of_unity() -> CheckResult:
    mask = make_lowpass(FilterSpec(), 16, 16)
    ok = bool(np.all(mask + highpass_of(mask) == 1.0))
    return ok, "exact" if ok else "not exact"


def check_alpha_identity() -> CheckResult:
    f = fft2(_rng("alpha").normal((8, 8, 1)))
    out = reduce_band(f, make_lowpass(FilterSpec(), 8, 8), 1.0)
    ok = bool(np.array_equal(out, f))
    return ok, "exact" if ok else "differs"


def check_energy_law() -> CheckResult:
    spec = FilterSpec(FilterKind.IDEAL, cutoff=0.5)
    z = _rng("energy").normal((16, 16, 1))
    mask = make_lowpass(spec, 16, 16)
    before = band_energy(fft2(z), mask)
    after = band_energy(fft2(frequency_manipulate(z, spec, 0.7, 0.0, 0)), mask)
    ratio = after / before
    return abs(ratio - 0.49) < 1e-9, f"ratio {ratio:.12f}"


def check_guidance_identities() -> CheckResult:
    rng = _rng("guidance")
    a, b, c = (rng.normal((4, 4, 1)) for _ in range(3))
    checks = [
        np.array_equal(cfg_combine(a, b, 0.0), a),
        np.array_equal(cfg_combine(a, b, 1.0), b),
        np.array_equal(negative_combine(a, b, 1.0), b),
        np.max(np.abs(dual_scale_combine(a, b, c, 2.5, 0.0) - cfg_combine(a, b, 2.5))) < 1e-12,
        np.max(np.abs(dual_scale_combine(c, b, c, 1.5, 0.7) - negative_combine(c, b, 1.5))) < 1e-12,
    ]
    return all(checks), f"{sum(checks)}/{len(checks)} identities"


def check_score_gradient() -> CheckResult:
    schedule = build_schedule()
    mean = _rng("score").normal((4, 4, 1))
    model = isotropic_model(mean, 0.8, schedule)
    z = _rng("score/z").normal((4, 4, 1))
    abar = schedule.alpha_bar_at(25)
    h = 1e-5
    grad = np.zeros_like(z)
    for idx in np.ndindex(z.shape):
        step = np.zeros_like(z)
        step[idx] = h
        grad[idx] = (model.log_density(z + step, abar)
                     - model.log_density(z - step, abar)) / (2 * h)
    expected = -np.sqrt(1 - abar) * grad
    eps = model.eps_from_alpha_bar(z, abar)
    rel = float(np.linalg.norm(eps - expected) / np.linalg.norm(expected))
    return rel < 1e-4, f"relative error {rel:.2e}"


def check_inverse_step() -> CheckResult:
    rng = _rng("step")
    z, e = rng.normal((4, 4, 1)), rng.normal((4, 4, 1))
    back = ddim_inverse_step(ddim_step(z, e, 0.4, 0.7), e, 0.7, 0.4)
    err = float(np.max(np.abs(back - z)))
    return err < 1e-12, f"max error {err:.2e}"


def check_round_trip() -> CheckResult:
    schedule = build_schedule(t_sample=50)
    mean = 2.0 * np.sign(_rng("trip/mean").normal((4, 4, 1)))
    model = isotropic_model(mean, 1.0, schedule)
    z0 = mean + 0.2 * _rng("trip/z").normal((4, 4, 1))
    recon = sample(model, schedule, invert(model, schedule, z0).final).final
    rel = float(np.linalg.norm(recon - z0) / np.linalg.norm(z0))
    return rel < 1e-2, f"relative error {rel:.2e}"


def check_frechet() -> CheckResult:
    d = frechet_gaussian(FeatureSet.from_moments([0.0], [[1.0]]),
                         FeatureSet.from_moments([1.0], [[1.0]]))
    a = artfid_composite(0.4881, 13.448)
    ok = abs(d - 1.0) < 1e-10 and abs(a - 1.4881 * 14.448) < 1e-6
    return ok, f"frechet {d:.12f}, artfid {a:.6f}"


def check_raw_format() -> CheckResult:
    g = _rng("raw").normal((5, 3, 2)) * 1e3
    ok = bool(np.array_equal(decode_raw(encode_raw(g)), g))
    return ok, "bit-exact" if ok else "differs"


def check_rng_streams() -> CheckResult:
    a = SeededRng(7, "noise").raw(64)
    b = SeededRng(7, "variant").raw(64)
    same = SeededRng(7, "noise").raw(64)
    ok = bool(np.array_equal(a, same)) and a[0] != b[0]
    return ok, "independent" if ok else "overlap"


CHECKS: List[Tuple[str, Callable[[], CheckResult]]] = [
    ("fft round trip", check_fft_round_trip),
    ("parseval", check_parseval),
    ("partition of unity", check_partition_of_unity),
    ("alpha=1 identity", check_alpha_identity),
    ("energy law", check_energy_law),
    ("guidance identities", check_guidance_identities),
    ("score gradient", check_score_gradient),
    ("inverse step", check_inverse_step),
    ("ddim round trip", check_round_trip),
    ("frechet / artfid", check_frechet),
    ("raw grid format", check_raw_format),
    ("rng streams", check_rng_streams),
]


def run_selftest(out: Optional[TextIO] = None) -> bool:
    """Run every check, print a pass/fail table and report whether all passed."""
    out = out or sys.stdout
    reporter = DiagnosticReporter()
    rows = []
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # report, keep going
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append([name, "PASS" if ok else "FAIL", detail])
        if ok:
            reporter.add_info(f"{name}: {detail}", stage="selftest")
        else:
            reporter.add_error(f"{name}: {detail}", code=ErrorCode.INTERNAL_ERROR, stage="selftest")

    print(format_table(["check", "result", "detail"], rows), file=out)
    for diagnostic in reporter.errors:
        print(diagnostic.format(), file=out)
    return not reporter.has_errors()
