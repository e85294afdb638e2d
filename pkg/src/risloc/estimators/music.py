"""Location estimators: the decoupled (modified) MUSIC and full-search baselines."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..geometry import ResponseModel, RisGeometry, angles_from_cosines, direction_cosines
from ..grids import SearchGrids
from ..subspace import SubspaceSplit, eig_split
from .peaks import find_peaks, find_peaks_2d, ranked_maxima, refine_point
from .smoothing import antidiagonal_vector, smooth_subvectors, smoothed_covariance, smoothing_plan
from .spectrum import (SpectrumGrid, angle_spectrum, distance_spectrum, music2d_spectrum,
                       music3d_spectrum)


@dataclass(frozen=True)
class LocationEstimate:
    azimuth: float
    elevation: float
    range: float
    spectrum_value: float


@dataclass
class EstimationResult:
    """Estimates plus the spectra and evaluation count that produced them.

    ``spectrum`` holds the main search spectrum (angle spectrum for the
    modified algorithm, the 3-D/2-D grid otherwise).
    """

    estimates: list[LocationEstimate]
    degenerate: bool
    grid_evals: int
    spectrum: SpectrumGrid | None = None
    distance_spectra: list[SpectrumGrid] = field(default_factory=list)


def distance_estimate(phi_hat: float, theta_hat: float, noise_basis_full, r_grid,
                      geom: RisGeometry, refine: bool = False,
                      model: ResponseModel = "fresnel") -> tuple[float, SpectrumGrid]:
    """Range maximizing the full-array Fresnel MUSIC spectrum at a given direction.

    ``noise_basis_full`` is the noise basis of the N x N sample covariance or
    its SubspaceSplit.
    """
    spec = distance_spectrum(phi_hat, theta_hat, noise_basis_full, r_grid, geom, model)
    i = int(np.argmax(spec.values))
    r = refine_point(spec, (i,))[0] if refine else float(spec.axes[0].values[i])
    return r, spec


# -- grating-lobe handling ---------------------------------------------------
#
# Anti-diagonal phases advance by 2*alpha per element, so the angle spectrum
# is periodic in direction-cosine space with period lambda / (2 d).  With
# half-wavelength spacing several visible directions share one spectrum value.

def alias_periods(geom: RisGeometry) -> tuple[float, float]:
    return geom.wavelength / (2 * geom.d_h), geom.wavelength / (2 * geom.d_v)


def _wrapped(d, period):
    return (d + period / 2) % period - period / 2


def alias_candidates(azimuth: float, elevation: float, geom: RisGeometry,
                     grids: SearchGrids | None = None) -> list[tuple[float, float]]:
    """Visible directions indistinguishable from ``(azimuth, elevation)`` in
    the sub-RIS angle spectrum, the direction itself first."""
    pu, pv = alias_periods(geom)
    u0, v0 = direction_cosines(azimuth, elevation)
    out = [(float(azimuth), float(elevation))]
    na, nb = int(np.ceil(2 / pu)) + 1, int(np.ceil(2 / pv)) + 1
    for b in range(-nb, nb + 1):
        for a in range(-na, na + 1):
            if a == 0 and b == 0:
                continue
            u, v = u0 + a * pu, v0 + b * pv
            if abs(v) >= 1 or u * u >= 1 - v * v:
                continue
            az, el = angles_from_cosines(u, v)
            if grids is not None and not (_inside(az, grids.azimuth) and _inside(el, grids.elevation)):
                continue
            out.append((float(az), float(el)))
    return out


def _inside(x, spec) -> bool:
    slack = 0.5 * spec.step
    return spec.start - slack <= x <= spec.stop + slack


def _nearest_index(values: np.ndarray, x: float) -> int:
    return int(np.argmin(np.abs(values - x)))


def _alias_classes(spec: SpectrumGrid, k: int, geom: RisGeometry):
    """Group the angle spectrum's maxima into alias classes, strongest first.

    Returns up to ``k`` representative indices plus all maxima (index, u, v).
    """
    az_ax, el_ax = spec.axes
    maxima = ranked_maxima(spec.values)
    pu, pv = alias_periods(geom)
    step = max(np.max(np.diff(az_ax.values), initial=0), np.max(np.diff(el_ax.values), initial=0))
    tol = 2.5 * step
    info = []
    for idx in maxima:
        u, v = direction_cosines(az_ax.values[idx[0]], el_ax.values[idx[1]])
        info.append((idx, u, v))
    reps = []
    for idx, u, v in info:
        if any(abs(_wrapped(u - ru, pu)) <= tol and abs(_wrapped(v - rv, pv)) <= tol
               for _, ru, rv in reps):
            continue
        reps.append((idx, u, v))
        if len(reps) == k:
            break
    return reps, info, tol


def _snap(spec: SpectrumGrid, az: float, el: float, maxima, tol) -> tuple[int, int]:
    """Nearest angle-spectrum maximum to a direction, else its nearest grid point."""
    u, v = direction_cosines(az, el)
    best, best_d = None, np.inf
    for idx, mu, mv in maxima:
        d = max(abs(mu - u), abs(mv - v))
        if d <= tol and d < best_d:
            best, best_d = idx, d
    if best is not None:
        return best
    return (_nearest_index(spec.axes[0].values, az), _nearest_index(spec.axes[1].values, el))


def smoothed_subspace(r_hat: np.ndarray, scn) -> SubspaceSplit:
    """Signal/noise split of the sub-RIS covariance built from ``r_hat``'s anti-diagonal."""
    d_h, d_v = scn.smoothing
    plan = smoothing_plan(scn.geom, d_h, d_v)
    y_sub = smooth_subvectors(antidiagonal_vector(r_hat), plan, scn.geom)
    return eig_split(smoothed_covariance(y_sub), scn.k)


def modified_music(r_hat: np.ndarray, scn, *, resolve_aliases: bool = True,
                   refine: bool = False, model: ResponseModel = "fresnel") -> EstimationResult:
    """Decoupled angle-then-distance localization from the N x N covariance.

    ``scn`` supplies ``geom``, ``k``, ``smoothing`` and ``grids``.  With
    ``resolve_aliases`` every grating-lobe alias of an angle peak is scored
    by its full-array distance spectrum and the K best directions are kept;
    without it the K highest angle peaks are taken as they are.
    """
    geom, k, grids = scn.geom, scn.k, scn.grids
    d_h, d_v = scn.smoothing
    split_bar = smoothed_subspace(r_hat, scn)
    spec = angle_spectrum(split_bar, grids.azimuth.values, grids.elevation.values, geom, d_h, d_v)
    split_full = eig_split(r_hat, k)
    r_values = grids.distance.values
    evals = spec.evaluations

    if not resolve_aliases:
        peaks = find_peaks_2d(spec, k, refine)
        estimates, dspecs = [], []
        for az, el in peaks.points:
            r, ds = distance_estimate(az, el, split_full, r_values, geom, refine, model)
            estimates.append(LocationEstimate(az, el, r, float(ds.values.max())))
            dspecs.append(ds)
            evals += ds.evaluations
        return EstimationResult(estimates, peaks.degenerate, evals, spec, dspecs)

    reps, maxima, tol = _alias_classes(spec, k, geom)
    degenerate = len(reps) < k
    if degenerate:
        fallback = find_peaks_2d(spec, k)
        seen = {r[0] for r in reps}
        for idx in fallback.indices:
            if idx not in seen and len(reps) < k:
                reps.append((idx, 0.0, 0.0))
    az_vals, el_vals = spec.axes[0].values, spec.axes[1].values
    scored = {}
    for idx, _, _ in reps:
        for az, el in alias_candidates(az_vals[idx[0]], el_vals[idx[1]], geom, grids):
            cand = _snap(spec, az, el, maxima, tol)
            if cand in scored:
                continue
            if refine:
                az_c, el_c = refine_point(spec, cand)
            else:
                az_c, el_c = az_vals[cand[0]], el_vals[cand[1]]
            r, ds = distance_estimate(az_c, el_c, split_full, r_values, geom, refine, model)
            evals += ds.evaluations
            scored[cand] = (float(ds.values.max()), LocationEstimate(float(az_c), float(el_c), r,
                                                                     float(ds.values.max())), ds)
    best = sorted(scored.values(), key=lambda t: -t[0])[:k]
    return EstimationResult([b[1] for b in best], degenerate, evals, spec, [b[2] for b in best])


def music_3d(r_hat: np.ndarray, k: int, grids: SearchGrids, geom: RisGeometry,
             refine: bool = False, model: ResponseModel = "fresnel") -> EstimationResult:
    """Exhaustive azimuth x elevation x distance MUSIC search."""
    split = eig_split(r_hat, k)
    spec = music3d_spectrum(split, grids.azimuth.values, grids.elevation.values,
                            grids.distance.values, geom, model)
    peaks = find_peaks(spec, k, refine)
    estimates = [LocationEstimate(*p, v) for p, v in zip(peaks.points, peaks.values)]
    return EstimationResult(estimates, peaks.degenerate, spec.evaluations, spec)


def music_2d_known_elevation(r_hat: np.ndarray, k: int, known_thetas, grids: SearchGrids,
                             geom: RisGeometry, refine: bool = False,
                             model: ResponseModel = "fresnel") -> EstimationResult:
    """Azimuth x distance MUSIC with each user's elevation given.

    Users sharing an elevation share one 2-D spectrum, from which as many
    peaks are taken as there are users at that elevation.
    """
    known_thetas = [float(t) for t in known_thetas]
    if len(known_thetas) != k:
        raise ValueError(f"need {k} known elevations, got {len(known_thetas)}")
    split = eig_split(r_hat, k)
    estimates, spectra = [], []
    degenerate, evals = False, 0
    for theta in sorted(set(known_thetas)):
        count = known_thetas.count(theta)
        spec = music2d_spectrum(split, grids.azimuth.values, theta, grids.distance.values, geom, model)
        evals += spec.evaluations
        peaks = find_peaks(spec, count, refine)
        degenerate |= peaks.degenerate
        spectra.append(spec)
        for (az, r), v in zip(peaks.points, peaks.values):
            estimates.append(LocationEstimate(az, theta, r, v))
    return EstimationResult(estimates, degenerate, evals, spectra[0] if len(spectra) == 1 else None,
                            spectra)
