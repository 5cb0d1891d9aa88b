"""
Batch Runner - orderability verdicts for a directory of presentations

Rows are cached on disk keyed by the presentation digest plus the
configuration fingerprint, so re-running a census only evaluates new or
changed files.
"""

import hashlib
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from .abelian import h1
from .config import RunConfig
from .errors import OrderabilityError
from .orderability import test_left_orderability
from .words import parse_presentation

logger = logging.getLogger(__name__)

PRESENTATION_SUFFIX = ".grp"
CACHE_FILENAME = ".orderability_cache.json"


@dataclass
class BatchRow:
    """One line of the census table"""
    name: str
    h1: str = ""
    ord: str = ""
    verdict: str = ""
    radius: Optional[int] = None
    seconds: float = 0.0
    certificate: str = ""
    error: str = ""

    def to_dict(self) -> Dict:
        return asdict(self)


def _cache_key(text: str, config: RunConfig) -> str:
    return hashlib.sha256((text + "\0" + config.fingerprint()).encode("utf-8")).hexdigest()


def evaluate_file(path: str, config: RunConfig, cert_dir: Optional[str] = None) -> BatchRow:
    """Evaluate one presentation file; failures are recorded, never raised"""
    source = Path(path)
    row = BatchRow(name=source.stem)
    started = time.monotonic()
    try:
        presentation = parse_presentation(source.read_text())
        row.h1 = h1(presentation).render()
        verdict = test_left_orderability(presentation, config)
        row.ord = verdict.ord_symbol
        row.verdict = verdict.kind.value if not verdict.reason else f"{verdict.kind.value} ({verdict.reason.value})"
        row.radius = verdict.radius
        if verdict.certificate is not None:
            target = Path(cert_dir or source.parent) / f"{source.stem}.cert.json"
            verdict.certificate.save(str(target))
            row.certificate = str(target)
    except OrderabilityError as e:
        row.error = f"{e.kind}: {e}"
    except OSError as e:
        row.error = f"io_error: {e}"
    row.seconds = time.monotonic() - started
    return row


def _evaluate_job(args) -> Dict:
    path, config_dict, cert_dir = args
    config_dict = dict(config_dict, radii=tuple(config_dict["radii"]))
    return evaluate_file(path, RunConfig(**config_dict), cert_dir).to_dict()


class BatchRunner:
    """Evaluates every presentation file in a directory"""

    def __init__(self, directory: str, config: RunConfig, cert_dir: Optional[str] = None,
                 use_cache: bool = True, cache_path: Optional[str] = None):
        self.directory = Path(directory)
        self.config = config
        self.cert_dir = cert_dir
        self.use_cache = use_cache
        self.cache_path = Path(cache_path) if cache_path else self.directory / CACHE_FILENAME
        self.cache: Dict[str, Dict] = self._load_cache() if use_cache else {}

    def _load_cache(self) -> Dict[str, Dict]:
        if not self.cache_path.exists():
            return {}
        try:
            return json.loads(self.cache_path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("ignoring unreadable cache %s: %s", self.cache_path, e)
            return {}

    def _save_cache(self):
        if self.use_cache:
            self.cache_path.write_text(json.dumps(self.cache, indent=2, sort_keys=True))

    def files(self) -> List[Path]:
        return sorted(self.directory.glob(f"*{PRESENTATION_SUFFIX}"))

    def run(self) -> List[BatchRow]:
        files = self.files()
        rows: Dict[str, BatchRow] = {}
        pending = []
        keys: Dict[str, str] = {}
        for path in files:
            try:
                key = _cache_key(path.read_text(), self.config)
            except OSError:
                key = ""
            keys[str(path)] = key
            if key and key in self.cache:
                rows[str(path)] = BatchRow(**self.cache[key])
            else:
                pending.append(str(path))
        logger.info("batch: %d files, %d cached", len(files), len(files) - len(pending))

        if self.config.deterministic or self.config.jobs <= 1 or len(pending) <= 1:
            for path in pending:
                rows[path] = evaluate_file(path, self.config, self.cert_dir)
        else:
            jobs = [(path, self.config.to_dict(), self.cert_dir) for path in pending]
            with ProcessPoolExecutor(max_workers=self.config.jobs) as pool:
                for path, result in zip(pending, pool.map(_evaluate_job, jobs)):
                    rows[path] = BatchRow(**result)

        for path in pending:
            row = rows[path]
            if keys[path] and not row.error:
                self.cache[keys[path]] = row.to_dict()
        self._save_cache()
        return [rows[str(path)] for path in files]


def rows_to_frame(rows: List[BatchRow]) -> pd.DataFrame:
    """Census table as a DataFrame (one row per file)"""
    return pd.DataFrame([row.to_dict() for row in rows],
                        columns=["name", "h1", "ord", "verdict", "radius", "seconds", "certificate", "error"])
