# core/log_utils.py
from __future__ import annotations
import hashlib
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Dict, Optional


class LogFile:
    def __init__(self, base_dir: Path, title: str = "frobsplit") -> None:
        base_dir.mkdir(parents=True, exist_ok=True)
        ts = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
        self.path = base_dir / f"log_{ts}.txt"
        self._write(f"===== {title} log {ts} =====")

    def write(self, line: str) -> None:
        self._write(line)

    def _write(self, line: str) -> None:
        try:
            ts = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(f"[{ts}] {line}\n")
        except Exception:
            pass


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class RunManifest:
    """Provenance of one run; kept out of the report so reports stay byte-identical."""
    tool_version: str
    subcommand: str
    p: Optional[int] = None
    e: Optional[int] = None
    input_digests: Dict[str, str] = field(default_factory=dict)
    wall_clock: float = 0.0
    result_digest: str = ""

    def add_input(self, name: str, canonical: str) -> None:
        self.input_digests[name] = sha256_text(canonical)

    def seal(self, report: str, wall_clock: float) -> None:
        self.result_digest = sha256_text(report)
        self.wall_clock = round(wall_clock, 6)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def write(self, path: Path) -> None:
        path.write_text(self.to_json() + "\n", encoding="utf-8")
