"""
Census records and their JSON-lines / CSV persistence
"""

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

from arith.shapes import DiscriminantShape
from classgrp.structure import ClassGroupData
from poly.galois import GaloisLabel
from poly.intpoly import IntPolynomial
from s4param.tables import TameClass
from s4param.triple import FieldTriple
from utils.logger import setup_logger

logger = setup_logger(__name__)

FORMAT_NAME = 's4census-fields'
FORMAT_VERSION = 1


@dataclass
class CensusRecord:
    """One field of the census; the canonical polynomial is its key."""
    poly: IntPolynomial
    disc: int
    signature: Tuple[int, int]
    galois: GaloisLabel
    triple: Optional[FieldTriple] = None
    conductor_S: Optional[int] = None
    disc_shape: Optional[DiscriminantShape] = None
    tame_rows: List[TameClass] = field(default_factory=list)
    class_data_k: Optional[ClassGroupData] = None
    class_data_M: Optional[ClassGroupData] = None
    verdicts: Dict[str, bool] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def disc_abs(self) -> int:
        return abs(self.disc)

    def sort_key(self):
        return abs(self.disc), self.poly.coefficients

    def to_dict(self) -> Dict[str, Any]:
        return {
            'poly': list(self.poly.coefficients),
            'disc': self.disc,
            'sig': list(self.signature),
            'galois': str(self.galois),
            'triple': self.triple.to_dict() if self.triple else None,
            'conductor_S': self.conductor_S,
            'shape': self.disc_shape.to_dict() if self.disc_shape else None,
            'tame': [row.to_dict() for row in self.tame_rows],
            'clk': self.class_data_k.to_dict() if self.class_data_k else None,
            'clM': self.class_data_M.to_dict() if self.class_data_M else None,
            'verdicts': dict(sorted(self.verdicts.items())),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CensusRecord':
        return cls(
            poly=IntPolynomial.from_coefficients(data['poly']),
            disc=int(data['disc']),
            signature=tuple(data['sig']),
            galois=GaloisLabel(data['galois']),
            triple=FieldTriple.from_dict(data['triple']) if data.get('triple') else None,
            conductor_S=data.get('conductor_S'),
            disc_shape=DiscriminantShape(**data['shape']) if data.get('shape') else None,
            tame_rows=[TameClass.from_dict(row) for row in data.get('tame') or []],
            class_data_k=ClassGroupData.from_dict(data['clk']) if data.get('clk') else None,
            class_data_M=ClassGroupData.from_dict(data['clM']) if data.get('clM') else None,
            verdicts=dict(data.get('verdicts') or {}),
        )


def _dumps(obj: Dict[str, Any]) -> str:
    return json.dumps(obj, sort_keys=True, separators=(',', ':'))


def write_jsonl(path: str, records: Iterable[CensusRecord], degree: int, max_disc: int) -> int:
    """
    Write a census file: a versioned header line, then one record per line.

    Returns:
        Number of records written
    """
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(out, 'w', encoding='utf-8') as f:
        header = {'format': FORMAT_NAME, 'version': FORMAT_VERSION, 'degree': degree, 'max_disc': max_disc}
        f.write(_dumps(header) + '\n')
        for record in records:
            f.write(_dumps(record.to_dict()) + '\n')
            count += 1
    logger.info(f"Wrote {count} records to {out}")
    return count


def read_jsonl(path: str) -> Tuple[Dict[str, Any], List[CensusRecord]]:
    """
    Read a census file.

    Raises:
        ValueError: on a missing or unknown header
    """
    with open(path, 'r', encoding='utf-8') as f:
        lines = [line for line in f if line.strip()]
    if not lines:
        raise ValueError(f"{path} is empty")
    header = json.loads(lines[0])
    if header.get('format') != FORMAT_NAME or header.get('version') != FORMAT_VERSION:
        raise ValueError(f"{path} is not a {FORMAT_NAME} v{FORMAT_VERSION} file")
    return header, [CensusRecord.from_dict(json.loads(line)) for line in lines[1:]]


def write_counts_csv(path: str, counts: Dict[int, int], key_name: str) -> None:
    """Two-column CSV of a count table, sorted by key."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerow([key_name, 'count'])
        for key in sorted(counts):
            writer.writerow([key, counts[key]])
    logger.info(f"Wrote {len(counts)} rows to {out}")
