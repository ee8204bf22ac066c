"""Built-in experiment presets.

Each preset maps to one or more run configs. Names are stable tokens used
by the CLI; descriptions say what each run computes.
"""

from __future__ import annotations

import copy


def _single(preset_net, z_max, scale=1.0, site=1, **extra):
    cfg = {
        "network": {"preset": preset_net},
        "mode": "single",
        "initial_state": {"type": "site", "index": site},
        "z_max": z_max,
        "dephasing_scale": scale,
    }
    cfg.update(extra)
    return cfg


def _two(preset_net, z_max, state, scale=1.0, **extra):
    cfg = {
        "network": {"preset": preset_net},
        "mode": "two",
        "initial_state": state,
        "z_max": z_max,
        "dephasing_scale": scale,
    }
    cfg.update(extra)
    return cfg


def _oracle_single(preset_net, z_max, M, site=1, **extra):
    cfg = {
        "network": {"preset": preset_net},
        "mode": "oracle_single",
        "initial_state": {"type": "site", "index": site},
        "z_max": z_max,
        "oracle": {"M": M},
    }
    cfg.update(extra)
    return cfg


_SEP = {"type": "separable", "p": 1, "q": 2, "statistics": "boson"}
_SEP_F = {"type": "separable", "p": 1, "q": 2, "statistics": "fermion"}
_ENT = {"type": "entangled", "p": 1, "q": 2}
_MIX = {"type": "classically_correlated", "p": 1, "q": 2}
_INC = {"type": "distinguishable", "p": 1, "q": 2}


def _catalog():
    cat = {}

    def add(name, description, runs):
        cat[name] = {"description": description, "runs": runs}

    add("fig1c-noiseless",
        "intensity evolution in the noiseless trimer, input site 1, z to 12 cm",
        {"fig1c-noiseless": _single("noiseless", 12.0)})
    add("fig1d-noiseless-ensemble",
        "21-sample trajectory ensemble of the noiseless trimer (matches the master equation)",
        {"fig1d-noiseless-ensemble": _oracle_single("noiseless", 12.0, 21)})
    add("fig1e-classical-dephasing",
        "master-equation intensity evolution with the classical dephasing rates, z to 12 cm",
        {"fig1e-classical-dephasing": _single("classical", 12.0)})
    add("fig1f-classical-dephasing",
        "21-sample disordered-trimer ensemble with the classical rates, z to 12 cm",
        {"fig1f-classical-dephasing": _oracle_single("classical", 12.0, 21)})
    add("fig2-gamma-sweep",
        "single-particle coherence decay at 0.3x, 0.6x, and 1.0x the classical rates, z to 10 cm",
        {f"fig2-gamma-{tag}": _single("classical", 10.0, scale=s)
         for tag, s in (("0.3x", 0.3), ("0.6x", 0.6), ("1.0x", 1.0))})
    add("fig3-separable-boson",
        "two separable bosons into sites (1,2), quantum rates, z to 100 cm",
        {"fig3-separable-boson": _two("quantum", 100.0, _SEP)})
    add("fig3-entangled-boson",
        "double-occupation entangled bosons across sites (1,2), quantum rates, z to 100 cm",
        {"fig3-entangled-boson": _two("quantum", 100.0, _ENT)})
    add("fig3-classically-correlated",
        "classically correlated double occupations of sites (1,2), quantum rates, z to 100 cm",
        {"fig3-classically-correlated": _two("quantum", 100.0, _MIX)})
    add("fig3-distinguishable",
        "initially distinguishable pair into sites (1,2), quantum rates, z to 100 cm",
        {"fig3-distinguishable": _two("quantum", 100.0, _INC)})
    add("fig3-separable-fermion",
        "two separable fermions into sites (1,2), quantum rates, z to 100 cm",
        {"fig3-separable-fermion": _two("quantum", 100.0, _SEP_F)})
    add("fig4-coherence-measures",
        "coherence-measure evolution for separable, entangled, and distinguishable inputs",
        {"fig4-separable": _two("quantum", 40.0, _SEP, sample_every=20),
         "fig4-entangled": _two("quantum", 40.0, _ENT, sample_every=20),
         "fig4-distinguishable": _two("quantum", 40.0, _INC, sample_every=20)})
    add("fig5-two-photon-correlations",
        "joint-detection matrices at z = 12 cm for the four two-photon inputs",
        {"fig5-separable": _two("quantum", 12.0, _SEP),
         "fig5-entangled": _two("quantum", 12.0, _ENT),
         "fig5-classically-correlated": _two("quantum", 12.0, _MIX),
         "fig5-distinguishable": _two("quantum", 12.0, _INC)})
    add("figF7-strong-dephasing-5x",
        "entangled input at 5x the quantum rates, z to 100 cm",
        {"figF7-strong-dephasing-5x": _two("quantum", 100.0, _ENT, scale=5.0)})
    add("figF9-zeno-50x",
        "entangled input at 50x the quantum rates: dephasing-suppressed transport, z to 100 cm",
        {"figF9-zeno-50x": _two("quantum", 100.0, _ENT, scale=50.0)})
    add("figF22-theory-correlations",
        "theory-side joint-detection matrices at z = 12 cm (separable, entangled, distinguishable)",
        {"figF22-separable": _two("quantum", 12.0, _SEP),
         "figF22-entangled": _two("quantum", 12.0, _ENT),
         "figF22-distinguishable": _two("quantum", 12.0, _INC)})
    return cat


CATALOG = _catalog()


def list_presets() -> list[tuple[str, str]]:
    """(name, description) pairs, sorted by name."""
    return [(name, CATALOG[name]["description"]) for name in sorted(CATALOG)]


def preset_runs(name: str) -> dict:
    """Run configs for a preset, keyed by run name."""
    if name not in CATALOG:
        raise KeyError(f"unknown preset {name!r}; see list_presets()")
    return copy.deepcopy(CATALOG[name]["runs"])
