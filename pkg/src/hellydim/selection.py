from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SelectionReport:
    """Factor subset whose projection keeps a closed orbit of full dimension.

    ``indices`` are 0-based positions in the caller's factor list.
    """

    indices: tuple[int, ...]
    closed: bool
    dim_full: int
    dim_selected: int
    stripped: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        out = {"indices": list(self.indices), "closed": self.closed,
               "dim_full": self.dim_full, "dim_selected": self.dim_selected}
        if self.stripped:
            out["stripped"] = list(self.stripped)
        return out
