from abc import ABC, abstractmethod
from models.errors import StorageError
from models.experiment import ExperimentSpec, GenSpec
from pathlib import Path
from typing import Dict, List, Optional, Union
import os

LIST_KEYS = {"n": "n_values", "d": "d_values", "tightness": "tightness_values", "oracle": "oracles"}
SCALAR_KEYS = {"problem", "trials", "seed", "pilot", "auto_k", "depth"}


class SpecFileParser(ABC):
    @abstractmethod
    def parse_pairs(self, text: str) -> Dict[str, str]:
        pass

    def read_pairs(self, path: Union[str, Path]) -> Dict[str, str]:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise StorageError(str(path), e.strerror or str(e)) from e
        return self.parse_pairs(text)

    def experiment_spec(self, pairs: Dict[str, str]) -> ExperimentSpec:
        """Build an ExperimentSpec; DCOPT_SEED overrides `seed` when set."""
        unknown = set(pairs) - set(LIST_KEYS) - SCALAR_KEYS
        if unknown:
            raise ValueError(f"unknown spec keys: {', '.join(sorted(unknown))}")
        if "problem" not in pairs or "n" not in pairs or "trials" not in pairs:
            raise ValueError("spec needs 'problem', 'n' and 'trials'")

        data: Dict[str, object] = {"problem": pairs["problem"], "trials": int(pairs["trials"])}
        for key, field in LIST_KEYS.items():
            if key in pairs:
                data[field] = _split_list(pairs[key], float if key == "tightness" else (str if key == "oracle" else int))
        seed = _seed_override(pairs.get("seed"))
        if seed is not None:
            data["base_seed"] = seed
        if "pilot" in pairs:
            data["pilot"] = int(pairs["pilot"])
        if "auto_k" in pairs:
            data["auto_k"] = pairs["auto_k"].strip().lower() in ("1", "true", "yes", "on")
        if "depth" in pairs:
            data["depth"] = int(pairs["depth"])
        return ExperimentSpec(**data)

    def gen_spec(self, pairs: Dict[str, str]) -> GenSpec:
        """A single-instance spec: `n`, `d` and `tightness` take one value each."""
        if "problem" not in pairs or "n" not in pairs:
            raise ValueError("spec needs 'problem' and 'n'")
        data: Dict[str, object] = {"problem": pairs["problem"], "n": int(pairs["n"])}
        if "d" in pairs:
            data["d"] = int(pairs["d"])
        if "tightness" in pairs:
            data["tightness"] = float(pairs["tightness"])
        seed = _seed_override(pairs.get("seed"))
        if seed is not None:
            data["seed"] = seed
        return GenSpec(**data)


class KeyValueSpecFileParser(SpecFileParser):
    """`key = value` lines, `#` comments, comma-separated lists."""

    def parse_pairs(self, text: str) -> Dict[str, str]:
        pairs: Dict[str, str] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {number}: expected 'key = value', got '{raw.strip()}'")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key:
                raise ValueError(f"line {number}: empty key")
            pairs[key.lower()] = value
        return pairs


def _split_list(value: str, cast) -> List:
    return [cast(part.strip()) for part in value.split(",") if part.strip()]


def _seed_override(value: Optional[str]) -> Optional[int]:
    env = os.getenv("DCOPT_SEED")
    if env:
        return int(env, 0)
    return int(value, 0) if value is not None else None
