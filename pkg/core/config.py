# core/config.py
from __future__ import annotations
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import ConfigError

ENV_DEGREE_CAP = "FROBSPLIT_DEGREE_CAP"


class ConfigManager:
    DEFAULTS: Dict[str, Any] = {
        "degree_cap": 60,            # Buchberger S-pair degree cap
        "q_bound": 1 << 20,          # global guard on q = p^e
        "family_q_cap": 27,          # q cap for h(t) of a cubic family
        "workers": 4,                # threads for fiber / prime scans
        "progress": False,           # tqdm bars on scans
        "write_log": False,          # timestamped run log under log_dir
        "log_dir": "logs",
        "ui_language": "en",         # en | ru | zh
    }

    def __init__(self, path: Optional[Path] = None, env: Optional[Dict[str, str]] = None) -> None:
        base = Path(__file__).resolve().parents[1]
        self.path = path or (base / "config.json")
        self.env = os.environ if env is None else env
        self.data: Dict[str, Any] = {}
        self.load()

    def load(self) -> None:
        existed = self.path.exists()
        if existed:
            try:
                self.data = json.loads(self.path.read_text(encoding="utf-8"))
            except Exception:
                self.data = {}
        if not isinstance(self.data, dict):
            self.data = {}
        for k, v in self.DEFAULTS.items():
            self.data.setdefault(k, v)
        # an existing file is left untouched; only setters write back
        if not existed:
            self.save()

    def save(self) -> None:
        try:
            self.path.write_text(json.dumps(self.data, ensure_ascii=False, indent=2), encoding="utf-8")
        except Exception:
            pass

    def _int(self, key: str) -> int:
        try:
            return int(self.data.get(key, self.DEFAULTS[key]))
        except (TypeError, ValueError):
            return int(self.DEFAULTS[key])

    # flag > environment > file > default
    def resolve_degree_cap(self, flag: Optional[int] = None) -> int:
        if flag is not None:
            return self._positive("--degree-cap", flag)
        raw = self.env.get(ENV_DEGREE_CAP)
        if raw is not None and raw.strip():
            try:
                value = int(raw.strip())
            except ValueError:
                raise ConfigError(f"{ENV_DEGREE_CAP}={raw!r} is not an integer") from None
            return self._positive(ENV_DEGREE_CAP, value)
        return self.degree_cap

    @staticmethod
    def _positive(name: str, value: int) -> int:
        if value < 1:
            raise ConfigError(f"{name} must be a positive integer, got {value}")
        return value

    # properties
    @property
    def degree_cap(self) -> int: return self._int("degree_cap")
    @degree_cap.setter
    def degree_cap(self, v: int): self.data["degree_cap"] = int(v); self.save()

    @property
    def q_bound(self) -> int: return self._int("q_bound")
    @q_bound.setter
    def q_bound(self, v: int): self.data["q_bound"] = int(v); self.save()

    @property
    def family_q_cap(self) -> int: return self._int("family_q_cap")
    @family_q_cap.setter
    def family_q_cap(self, v: int): self.data["family_q_cap"] = int(v); self.save()

    @property
    def workers(self) -> int: return max(1, self._int("workers"))
    @workers.setter
    def workers(self, v: int): self.data["workers"] = int(v); self.save()

    @property
    def progress(self) -> bool: return bool(self.data.get("progress", False))
    @progress.setter
    def progress(self, v: bool): self.data["progress"] = bool(v); self.save()

    @property
    def write_log(self) -> bool: return bool(self.data.get("write_log", False))
    @write_log.setter
    def write_log(self, v: bool): self.data["write_log"] = bool(v); self.save()

    @property
    def log_dir(self) -> Path:
        d = Path(str(self.data.get("log_dir", "logs")))
        return d if d.is_absolute() else self.path.parent / d
    @log_dir.setter
    def log_dir(self, v: str): self.data["log_dir"] = str(v); self.save()

    @property
    def ui_language(self) -> str: return str(self.data.get("ui_language", "en"))
    @ui_language.setter
    def ui_language(self, v: str): self.data["ui_language"] = v; self.save()
