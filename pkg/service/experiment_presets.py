"""
Named experiment presets for the standard d-KP, BPP and TSP grids, with
trial counts reduced to desk scale.
"""

from models.experiment import ExperimentSpec, ProblemKind
from typing import Dict, List

DKP_SIZES = [6, 10, 20, 50]
DKP_DIMENSIONS = [2, 4, 6]
BPP_SIZES = [20, 50, 100, 250, 500, 1000, 1500, 2000]
TSP_SIZES = [8, 18, 30, 44, 60, 78, 98, 120]


def _dkp(tightness: float) -> ExperimentSpec:
    return ExperimentSpec(
        problem=ProblemKind.DKP,
        n_values=DKP_SIZES,
        d_values=DKP_DIMENSIONS,
        tightness_values=[tightness],
        oracles=["exact"],
        trials=200,
    )


def _tsp_exact(problem: ProblemKind) -> ExperimentSpec:
    return ExperimentSpec(problem=problem, n_values=[8], oracles=["exact"], trials=500)


def _tsp_heuristic(problem: ProblemKind) -> ExperimentSpec:
    return ExperimentSpec(problem=problem, n_values=TSP_SIZES, oracles=["heuristic"], trials=100)


PRESETS: Dict[str, ExperimentSpec] = {
    "table2": _dkp(0.25),
    "table3": _dkp(0.5),
    "table4": _dkp(0.75),
    "table7": ExperimentSpec(
        problem=ProblemKind.BPP,
        n_values=BPP_SIZES,
        oracles=["nfd", "ffd", "bfd"],
        trials=300,
    ),
    "table8-ms8": _tsp_exact(ProblemKind.TSP_MS),
    "tsp-ma8": _tsp_exact(ProblemKind.TSP_MA),
    "tsp-nms8": _tsp_exact(ProblemKind.TSP_NMS),
    "tsp-ms-heuristic": _tsp_heuristic(ProblemKind.TSP_MS),
    "tsp-ma-heuristic": _tsp_heuristic(ProblemKind.TSP_MA),
    "tsp-nms-heuristic": _tsp_heuristic(ProblemKind.TSP_NMS),
}


def preset_names() -> List[str]:
    return sorted(PRESETS)


def get_preset(name: str) -> ExperimentSpec:
    if name not in PRESETS:
        raise KeyError(f"unknown preset '{name}' (choose from {', '.join(preset_names())})")
    return PRESETS[name]
