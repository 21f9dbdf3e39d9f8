"""Reference solutions: exact spectra, heat traces, heat content, finite differences."""

from .spectra import (
    Spectrum,
    circle_spectrum,
    cylinder_spectrum,
    delta_circle_spectrum,
    disk_spectrum,
    flat_torus_spectrum,
    hemisphere_spectrum,
    interval_spectrum,
    rectangle_spectrum,
    sphere_spectrum,
)
from .traces import (
    TraceSamples,
    heat_trace,
    heat_trace_samples,
    interval_dirichlet_kernel_diagonal,
    interval_dirichlet_trace_images,
    theta_series,
    time_dependent_trace_samples,
)
from .content import (
    crank_nicolson_content,
    rod_dirichlet_content_series,
    rod_robin_content_series,
)
from .fd import (
    fd_delta_circle_eigenvalues,
    fd_interval_eigenvalues,
    observed_order,
    richardson,
)

__all__ = [
    "Spectrum",
    "interval_spectrum",
    "circle_spectrum",
    "delta_circle_spectrum",
    "rectangle_spectrum",
    "flat_torus_spectrum",
    "disk_spectrum",
    "sphere_spectrum",
    "hemisphere_spectrum",
    "cylinder_spectrum",
    "TraceSamples",
    "heat_trace",
    "heat_trace_samples",
    "time_dependent_trace_samples",
    "interval_dirichlet_trace_images",
    "interval_dirichlet_kernel_diagonal",
    "theta_series",
    "rod_dirichlet_content_series",
    "rod_robin_content_series",
    "crank_nicolson_content",
    "fd_interval_eigenvalues",
    "fd_delta_circle_eigenvalues",
    "richardson",
    "observed_order",
]
