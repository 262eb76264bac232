"""Access to the benchmark instances bundled with the package.

See ``data/README.md`` for the provenance and verification status of each
file.  Known reference values are attached as ``known_best`` when an
instance is loaded through :func:`load_bundled`.
"""

from __future__ import annotations

from importlib import resources

from .qaplib import QapInstance, ReferenceSolution, load_instance, load_reference_solution

# Published reference values for the bundled benchmark instances.
KNOWN_BEST = {
    "chr12a": 9552,
    "esc32e": 2,
}


def data_path(name: str):
    """Filesystem path of a bundled data file, e.g. ``chr12a.dat``."""
    p = resources.files("qapswarm").joinpath("data", name)
    if not p.is_file():
        raise FileNotFoundError(f"no bundled data file named {name!r}")
    return p


def list_bundled() -> list[str]:
    base = resources.files("qapswarm").joinpath("data")
    return sorted(f.name for f in base.iterdir() if f.name.endswith(".dat"))


def load_bundled(name: str) -> QapInstance:
    """Load a bundled instance by stem, e.g. ``load_bundled("chr12a")``."""
    return load_instance(data_path(f"{name}.dat"), known_best=KNOWN_BEST.get(name))


def load_bundled_solution(name: str) -> ReferenceSolution:
    return load_reference_solution(data_path(f"{name}.sln"))
