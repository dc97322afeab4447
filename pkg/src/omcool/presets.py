"""Figure and table presets.

Fixed parameters match the source captions value-for-value; axis grid
resolutions are presentation choices and default to 100 points per axis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .model import CavityMode, CouplingEdge, MechanicalMode, SystemConfig
from .sweep import SweepAxis, SweepSpec

DEFAULT_POINTS = 100


def n_type_config(
    delta_c: float = 1.0,
    delta_s: float = 1.0,
    kappa: float = 0.1,
    kappa_s: float = 0.1,
    omega2: float = 1.0,
    gamma: float = 1e-5,
    nbar: float = 1000.0,
    G1: float = 0.05,
    G2: float = 0.05,
    Gs1: float = 0.08,
) -> SystemConfig:
    """Two cavities, two mechanical modes, auxiliary cavity coupled to m0
    only.  Edge order: G1, G2, Gs1."""
    return SystemConfig(
        cavities=(CavityMode(delta_c, kappa), CavityMode(delta_s, kappa_s)),
        mechanicals=(MechanicalMode(1.0, gamma, nbar), MechanicalMode(omega2, gamma, nbar)),
        edges=(
            CouplingEdge("optomechanical", ("c0", "m0"), G1),
            CouplingEdge("optomechanical", ("c0", "m1"), G2),
            CouplingEdge("optomechanical", ("c1", "m0"), Gs1),
        ),
        parameter_mode="effective",
        topology="n_type",
    )


def network4_config(
    delta_c: float = 1.0,
    delta_s: float = 1.0,
    kappa: float = 0.1,
    kappa_s: float = 0.1,
    omega2: float = 1.0,
    gamma: float = 1e-5,
    nbar: float = 1000.0,
    G1: float = 0.05,
    G2: float = 0.05,
    Gs1: float = 0.08,
    Gs2: float = 0.08,
    J: float = 0.03,
    eta: float = 0.03,
) -> SystemConfig:
    """Fully network-coupled four-mode system.
    Edge order: G1, G2, Gs1, Gs2, J, eta."""
    return SystemConfig(
        cavities=(CavityMode(delta_c, kappa), CavityMode(delta_s, kappa_s)),
        mechanicals=(MechanicalMode(1.0, gamma, nbar), MechanicalMode(omega2, gamma, nbar)),
        edges=(
            CouplingEdge("optomechanical", ("c0", "m0"), G1),
            CouplingEdge("optomechanical", ("c0", "m1"), G2),
            CouplingEdge("optomechanical", ("c1", "m0"), Gs1),
            CouplingEdge("optomechanical", ("c1", "m1"), Gs2),
            CouplingEdge("photon_hop", ("c0", "c1"), J),
            CouplingEdge("phonon_hop", ("m0", "m1"), eta),
        ),
        parameter_mode="effective",
        topology="network4",
    )


def chain_config(
    N: int,
    delta_c: float = 1.0,
    delta_s: float = 1.0,
    kappa: float = 0.1,
    kappa_s: float = 0.1,
    omega: float = 1.0,
    gamma: float = 1e-5,
    nbar: float = 1000.0,
    G: float = 0.05,
    Gs: float = 0.1,
    eta: float = 0.06,
) -> SystemConfig:
    """Uniform N-resonator chain with intermediate cavity coupled to every
    mechanical mode and auxiliary cavity coupled to m0."""
    if N < 2:
        raise ConfigError("chain_config requires N >= 2")
    edges = [CouplingEdge("optomechanical", ("c0", f"m{l}"), G) for l in range(N)]
    edges.append(CouplingEdge("optomechanical", ("c1", "m0"), Gs))
    edges += [CouplingEdge("phonon_hop", (f"m{l}", f"m{l + 1}"), eta) for l in range(N - 1)]
    return SystemConfig(
        cavities=(CavityMode(delta_c, kappa), CavityMode(delta_s, kappa_s)),
        mechanicals=tuple(MechanicalMode(omega, gamma, nbar) for _ in range(N)),
        edges=tuple(edges),
        parameter_mode="effective",
        topology="chain",
    )


@dataclass(frozen=True)
class Preset:
    name: str
    kind: str  # solve | sweep | taxonomy | atomic
    description: str
    config: SystemConfig | None = None
    sweep: SweepSpec | None = None
    taxonomy_sizes: tuple[int, ...] = ()
    taxonomy_kappa: tuple[float, float] = (0.0, 0.0)
    atomic_levels: int = 0
    atomic_ratio: tuple[float, float] = (0.0, 0.0)
    points: int = DEFAULT_POINTS


def _sweep_preset(name, desc, base, axes, outputs, points) -> Preset:
    return Preset(
        name=name, kind="sweep", description=desc, config=base,
        sweep=SweepSpec(base=base, axes=axes, outputs=outputs), points=points,
    )


def get_preset(name: str, points: int | None = None) -> Preset:
    """Resolve a preset by name; ``points`` overrides the grid resolution."""
    pts = points if points is not None else DEFAULT_POINTS
    builder = _BUILDERS.get(name)
    if builder is None:
        raise ConfigError(f"unknown preset {name!r} (choose from {', '.join(preset_names())})")
    return builder(pts)


def preset_names() -> list[str]:
    return sorted(_BUILDERS)


def _fig2(panel: str, pts: int) -> Preset:
    base = n_type_config()
    if panel in "ab":
        axes = (SweepAxis("cavities.0.detuning", 0.5, 1.5, pts),
                SweepAxis("cavities.0.decay", 0.05, 1.0, pts))
    else:
        axes = (SweepAxis("cavities.1.detuning", 0.5, 1.5, pts),
                SweepAxis("cavities.1.decay", 0.05, 1.0, pts))
    out = "n_f_1" if panel in "ac" else "n_f_2"
    return _sweep_preset(
        f"fig2{panel}",
        f"{out} over driving-detuning x decay plane (degenerate resonators)",
        base, axes, (out, "stable"), pts)


def _fig3(panel: str, pts: int) -> Preset:
    base = n_type_config(Gs1=0.0 if panel in "ab" else 0.08)
    axes = (SweepAxis("mechanicals.1.frequency", 0.5, 1.5, pts),
            SweepAxis("cavities.0.decay", 0.05, 1.0, pts))
    out = "n_f_1" if panel in "ac" else "n_f_2"
    state = "auxiliary coupling off" if panel in "ab" else "auxiliary coupling on"
    return _sweep_preset(
        f"fig3{panel}", f"{out} over frequency-ratio x decay plane ({state})",
        base, axes, (out, "stable"), pts)


def _fig4(panel: str, pts: int) -> Preset:
    base = n_type_config()
    axes = (SweepAxis("edges.2.strength", 0.0, 0.3, pts),
            SweepAxis("cavities.1.decay", 0.4, 1.2, 3))
    out = "n_f_1" if panel == "a" else "n_f_2"
    return _sweep_preset(
        f"fig4{panel}", f"{out} vs auxiliary coupling strength at three decay rates",
        base, axes, (out, "stable"), pts)


def _fig7(panel: str, pts: int) -> Preset:
    sizes = {"a": (1,), "b": (1,), "c": (2,), "d": (2,), "e": (3,), "f": (3,)}[panel]
    return Preset(
        name=f"fig7{panel}", kind="taxonomy",
        description=f"taxonomy rows with {sizes[0]} closed channel(s), swept over kappa",
        config=network4_config(), taxonomy_sizes=sizes,
        taxonomy_kappa=(0.05, 1.0), points=pts)


def _fig8(panel: str, pts: int) -> Preset:
    if panel == "a":
        base = network4_config(Gs1=0.02, Gs2=0.08)
        axes = (SweepAxis("cavities.0.decay", 0.05, 1.0, pts),)
        desc = ("phonon numbers vs decay for Gs2 = 4 Gs1 = 0.08; the swapped "
                "case follows by the exchange symmetry")
    else:
        base = network4_config(Gs1=0.08, Gs2=0.08)
        axes = (SweepAxis("edges.3.strength", 0.0, 0.24, pts),)
        desc = "phonon numbers vs Gs2 (ratio Gs2/Gs1 in [0, 3]) at Gs1 = 0.08"
    return _sweep_preset(f"fig8{panel}", desc, base, axes,
                         ("n_f_1", "n_f_2", "stable", "dark"), pts)


def _fig11(panel: str, pts: int) -> Preset:
    N = {"a": 3, "b": 4, "c": 3, "d": 4}[panel]
    base = chain_config(N)
    if panel in "ab":
        axes = (SweepAxis("cavities.0.detuning", 0.5, 1.5, pts),)
    else:
        axes = (SweepAxis("cavities.0.decay", 0.05, 1.0, pts),)
    outputs = tuple(f"n_f_{l + 1}" for l in range(N)) + ("stable",)
    return _sweep_preset(f"fig11{panel}",
                         f"chain cooling, N={N}, dark modes broken",
                         base, axes, outputs, pts)


def _fig13(panel: str, pts: int) -> Preset:
    levels = 3 if panel == "a" else 4
    return Preset(
        name=f"fig13{panel}", kind="atomic",
        description=f"excited-state probabilities of the {levels}-level system vs amplitude ratio",
        atomic_levels=levels, atomic_ratio=(0.0, 3.0), points=pts)


def _table1(pts: int) -> Preset:
    return Preset(
        name="table1", kind="solve",
        description="scaled electromechanical parameter set, single solve",
        config=network4_config(J=0.03, eta=0.03), points=pts)


_BUILDERS = {}
for _p in "abcd":
    _BUILDERS[f"fig2{_p}"] = (lambda pts, p=_p: _fig2(p, pts))
    _BUILDERS[f"fig3{_p}"] = (lambda pts, p=_p: _fig3(p, pts))
    _BUILDERS[f"fig11{_p}"] = (lambda pts, p=_p: _fig11(p, pts))
for _p in "ab":
    _BUILDERS[f"fig4{_p}"] = (lambda pts, p=_p: _fig4(p, pts))
    _BUILDERS[f"fig8{_p}"] = (lambda pts, p=_p: _fig8(p, pts))
    _BUILDERS[f"fig13{_p}"] = (lambda pts, p=_p: _fig13(p, pts))
for _p in "abcdef":
    _BUILDERS[f"fig7{_p}"] = (lambda pts, p=_p: _fig7(p, pts))
_BUILDERS["table1"] = _table1
