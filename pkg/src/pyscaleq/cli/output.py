import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

from pyscaleq.errors import OutputFileError


def format_value(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return f'{value:.12g}'
    return str(value)


def to_csv(columns: Sequence[str], records: Iterable[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(columns)
    for record in records:
        writer.writerow([format_value(record[name]) for name in columns])
    return buf.getvalue()


def to_json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + '\n'


def emit(text: str, path: Optional[Path] = None):
    """Write to ``path`` or standard output"""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return None
    try:
        path.write_text(text, encoding='utf-8')
    except OSError as e:
        raise OutputFileError(f'Could not write output file {path}: {e}') from None
