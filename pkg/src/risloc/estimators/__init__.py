from .music import (EstimationResult, LocationEstimate, alias_candidates, distance_estimate,
                    modified_music, music_2d_known_elevation, music_3d,
                    smoothed_subspace)
from .peaks import Peaks, find_peaks, find_peaks_2d, strict_local_maxima
from .smoothing import (SmoothingPlan, antidiagonal_vector, smooth_subvectors,
                        smoothed_covariance, smoothing_plan)
from .spectrum import (Axis, SpectrumGrid, angle_spectrum, distance_spectrum,
                       music2d_spectrum, music3d_spectrum)

__all__ = [
    "Axis", "EstimationResult", "LocationEstimate", "Peaks", "SmoothingPlan", "SpectrumGrid",
    "alias_candidates", "angle_spectrum", "antidiagonal_vector", "distance_estimate",
    "distance_spectrum", "find_peaks", "find_peaks_2d", "modified_music",
    "music_2d_known_elevation", "music2d_spectrum", "music_3d", "music3d_spectrum",
    "smooth_subvectors", "smoothed_covariance", "smoothed_subspace", "smoothing_plan", "strict_local_maxima",
]
