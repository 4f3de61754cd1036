from abc import ABC, abstractmethod
from models.binpacking import BppInstance
from models.errors import (
    CountMismatchError,
    InstanceFormatError,
    MalformedHeaderError,
    OutOfRangeError,
    StorageError,
)
from models.knapsack import DkpInstance
from models.tsp import TspInstance
from pathlib import Path
from pydantic import ValidationError
from typing import Callable, List, Optional, Union

Instance = Union[DkpInstance, BppInstance, TspInstance]


def _real(x: float) -> str:
    # 17 significant digits round-trip every double
    return format(x, ".17g")


class InstanceParser(ABC):
    @abstractmethod
    def parse(self, text: str, path: Optional[str] = None) -> Instance:
        pass

    @abstractmethod
    def serialize(self, instance: Instance) -> str:
        pass

    def read(self, path: Union[str, Path]) -> Instance:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise StorageError(str(path), e.strerror or str(e)) from e
        return self.parse(text, str(path))

    def write(self, instance: Instance, path: Union[str, Path]) -> None:
        try:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            Path(path).write_text(self.serialize(instance), encoding="utf-8")
        except OSError as e:
            raise StorageError(str(path), e.strerror or str(e)) from e


class TextInstanceParser(InstanceParser):
    """
    Plain text instance files.

        dkp N D        then capacities, profits, and D rows of weights
        bpp N          then one line of N weights
        tsp N sym|asym metric|nonmetric   then N rows of N distances

    Blank lines and `#` comments are ignored.
    """

    def parse(self, text: str, path: Optional[str] = None) -> Instance:
        lines = [line.split("#", 1)[0].split() for line in text.splitlines()]
        lines = [tokens for tokens in lines if tokens]
        if not lines:
            raise MalformedHeaderError("empty instance file", path)

        header, body = lines[0], lines[1:]
        kind = header[0].lower()
        try:
            if kind == "dkp":
                return self._parse_dkp(header, body, path)
            if kind == "bpp":
                return self._parse_bpp(header, body, path)
            if kind == "tsp":
                return self._parse_tsp(header, body, path)
        except ValidationError as e:
            raise OutOfRangeError(_first_error(e), path) from e
        raise MalformedHeaderError(f"unknown problem '{header[0]}'", path)

    def serialize(self, instance: Instance) -> str:
        if isinstance(instance, DkpInstance):
            lines = [f"dkp {instance.n} {instance.d}"]
            lines.append(" ".join(str(c) for c in instance.capacities))
            lines.append(" ".join(str(p) for p in instance.profits))
            lines.extend(" ".join(str(w) for w in row) for row in instance.weights)
        elif isinstance(instance, BppInstance):
            lines = [f"bpp {instance.n}", " ".join(_real(w) for w in instance.weights)]
        elif isinstance(instance, TspInstance):
            sym = "sym" if instance.symmetric else "asym"
            metric = "metric" if instance.metric else "nonmetric"
            lines = [f"tsp {instance.n} {sym} {metric}"]
            lines.extend(" ".join(_real(x) for x in row) for row in instance.dist)
        else:
            raise TypeError(f"cannot serialize {type(instance).__name__}")
        return "\n".join(lines) + "\n"

    def _parse_dkp(self, header: List[str], body: List[List[str]], path: Optional[str]) -> DkpInstance:
        if len(header) != 3:
            raise MalformedHeaderError("expected header 'dkp N D'", path)
        n = _header_int(header[1], "N", path)
        d = _header_int(header[2], "D", path)
        if len(body) != d + 2:
            raise CountMismatchError(f"expected {d + 2} data lines, got {len(body)}", path)

        capacities = _row(body[0], d, int, "capacities", path)
        profits = _row(body[1], n, int, "profits", path)
        weights = [_row(body[2 + i], n, int, f"weights row {i}", path) for i in range(d)]
        instance = DkpInstance(d=d, n=n, capacities=capacities, profits=profits, weights=weights)
        if not instance.satisfies_hypothesis():
            raise OutOfRangeError("every item must fit each capacity alone and every constraint must bind", path)
        return instance

    def _parse_bpp(self, header: List[str], body: List[List[str]], path: Optional[str]) -> BppInstance:
        if len(header) != 2:
            raise MalformedHeaderError("expected header 'bpp N'", path)
        n = _header_int(header[1], "N", path)
        tokens = [t for line in body for t in line]
        return BppInstance(weights=_row(tokens, n, float, "weights", path))

    def _parse_tsp(self, header: List[str], body: List[List[str]], path: Optional[str]) -> TspInstance:
        if len(header) != 4 or header[2] not in ("sym", "asym") or header[3] not in ("metric", "nonmetric"):
            raise MalformedHeaderError("expected header 'tsp N sym|asym metric|nonmetric'", path)
        n = _header_int(header[1], "N", path)
        if len(body) != n:
            raise CountMismatchError(f"expected {n} distance rows, got {len(body)}", path)
        dist = [_row(line, n, float, f"distance row {u}", path) for u, line in enumerate(body)]
        return TspInstance(n=n, dist=dist, symmetric=header[2] == "sym", metric=header[3] == "metric")


def _header_int(token: str, name: str, path: Optional[str]) -> int:
    try:
        value = int(token)
    except ValueError:
        raise MalformedHeaderError(f"{name} must be an integer, got '{token}'", path) from None
    if value < 1:
        raise MalformedHeaderError(f"{name} must be positive, got {value}", path)
    return value


def _row(tokens: List[str], expected: int, cast: Callable, what: str, path: Optional[str]) -> list:
    if len(tokens) != expected:
        raise CountMismatchError(f"{what}: expected {expected} values, got {len(tokens)}", path)
    try:
        return [cast(t) for t in tokens]
    except ValueError as e:
        raise InstanceFormatError(f"{what}: {e}", path) from e


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    return str(first.get("msg", error))
