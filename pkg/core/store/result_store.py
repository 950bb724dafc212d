import csv
import json
import logging
import os
import tempfile
from typing import Dict, List, Sequence, Tuple

from core import DEFAULT_OUTPUT_DIR, OUTPUT_DIR_ENV
from core.store.config import RunConfig
from core.utils.utils import format_value, run_version

Table = Tuple[List[str], Sequence[Sequence]]


class ResultStore:
    """Writes result tables as CSV next to a JSON manifest holding everything needed to reproduce them."""

    def __init__(self, path: str = None):
        self.path = path or os.environ.get(OUTPUT_DIR_ENV) or DEFAULT_OUTPUT_DIR
        self.log = logging.getLogger('fountain.store')

    def save(self, name: str, config: RunConfig, tables: Dict[str, Table]) -> List[str]:
        """Writes one CSV per table, then the manifest.

        :param name: file stem, e.g. 'analyze-reduced'
        :param config: the validated run configuration
        :param tables: table suffix ('' for the main table) to (header, rows)
        :return: paths of the written files, manifest last
        """
        os.makedirs(self.path, exist_ok=True)
        paths = [self.write_csv(f'{name}{suffix}.csv', header, rows) for suffix, (header, rows) in tables.items()]
        paths.append(self.write_manifest(f'{name}.json', config, paths))
        return paths

    def write_csv(self, file_name: str, header: List[str], rows: Sequence[Sequence]) -> str:
        def write(f):
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(v) for v in row])
        return self._write_atomic(file_name, write)

    def write_manifest(self, file_name: str, config: RunConfig, files: Sequence[str]) -> str:
        manifest = {
            'command': config.command,
            'config': config.as_dict(),
            'seed': config.seed,
            'version': run_version(),
            'files': [os.path.basename(f) for f in files],
        }
        return self._write_atomic(file_name, lambda f: f.write(json.dumps(manifest, indent=2, sort_keys=True) + '\n'))

    def _write_atomic(self, file_name, write) -> str:
        path = os.path.join(self.path, file_name)
        fd, tmp = tempfile.mkstemp(dir=self.path, prefix='.' + file_name, suffix='.tmp')
        try:
            with os.fdopen(fd, 'w', newline='') as f:
                write(f)
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise
        self.log.info('Wrote %s', path)
        return path
