"""Хранилище записей YBX/1 с адресацией по каноническому хэшу."""

import logging
import os
import tempfile
from pathlib import Path
from typing import Dict, List, Optional

from yangbaxter_hub.core.exceptions import CatalogParseError, IntegrityError
from yangbaxter_hub.infra.catalog import (
    KINDS,
    CatalogRecord,
    canonical_payload,
    digest,
    format_value,
    parse,
    serialize,
)
from yangbaxter_hub.infra.settings import settings

logger = logging.getLogger(__name__)

SUFFIX = ".ybx"


class StoreManager:
    """Менеджер каталога записей.

    Записи лежат в ``<store_dir>/<kind>/<hash>.ybx``. Запись атомарна:
    временный файл в той же директории переименовывается в целевой.
    """

    def __init__(self, store_dir: Optional[str] = None):
        """
        Инициализация менеджера хранилища.

        Args:
            store_dir: Каталог хранилища (по умолчанию из настроек)
        """
        self.store_dir = Path(store_dir or settings.get_store_dir())
        self.store_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, kind: str, key: str) -> Path:
        return self.store_dir / kind / f"{key}{SUFFIX}"

    def _atomic_write(self, file_path: Path, text: str) -> None:
        """Атомарная запись текста через временный файл.

        Args:
            file_path: Путь к целевому файлу
            text: Содержимое
        """
        file_path.parent.mkdir(parents=True, exist_ok=True)
        temp_fd, temp_path = tempfile.mkstemp(
            dir=file_path.parent, prefix=f".{file_path.name}.tmp"
        )
        try:
            with os.fdopen(temp_fd, "w", encoding="utf-8") as temp_file:
                temp_file.write(text)
            os.replace(temp_path, file_path)
        except Exception:
            if os.path.exists(temp_path):
                os.unlink(temp_path)
            raise

    def put(self, record: CatalogRecord) -> str:
        """Сохранить запись; повторное сохранение того же класса дополняет инварианты.

        Returns:
            Ключ записи (канонический хэш)

        Raises:
            IntegrityError: Если под тем же хэшем лежит другое содержимое
        """
        if record.canonical_hash is None:
            record.canonical_hash = digest(canonical_payload(record))
        key = record.canonical_hash
        path = self._path(record.kind, key)
        if path.exists():
            existing = self.get(record.kind, key)
            if canonical_payload(existing) != canonical_payload(record):
                raise IntegrityError(key)
            merged = dict(existing.invariants)
            added = {k: v for k, v in record.invariants.items() if k not in merged}
            if not added:
                logger.debug("Record %s already stored", key)
                return key
            merged.update(added)
            existing.invariants = merged
            record = existing
        self._atomic_write(path, serialize(record))
        logger.info("Stored %s record %s", record.kind, key)
        return key

    def get(self, kind: str, key: str) -> Optional[CatalogRecord]:
        """Запись по виду и хэшу или None."""
        path = self._path(kind, key)
        if not path.exists():
            return None
        with open(path, "r", encoding="utf-8") as f:
            return parse(f.read())

    def _records(self, kind: str) -> List[CatalogRecord]:
        directory = self.store_dir / kind
        if not directory.is_dir():
            return []
        records = []
        for path in sorted(directory.glob(f"*{SUFFIX}")):
            try:
                with open(path, "r", encoding="utf-8") as f:
                    records.append(parse(f.read()))
            except (CatalogParseError, IOError) as e:
                logger.warning("Skipping unreadable record %s: %s", path.name, e)
        return records

    def query(self, kind: Optional[str] = None, **filters: str) -> List[CatalogRecord]:
        """Записи, у которых инварианты совпадают с фильтрами.

        Args:
            kind: Вид записей (по умолчанию все виды)
            filters: Пары ключ=значение (значения в строковом виде, например
                indecomposable="true", group="D8")
        """
        kinds = [kind] if kind else list(KINDS)
        wanted: Dict[str, str] = {k: format_value(v) for k, v in filters.items()}
        result = []
        for k in kinds:
            for record in self._records(k):
                values = dict(record.invariants)
                values["canonical_hash"] = record.canonical_hash or ""
                values[record.size_key] = str(record.size)
                if all(values.get(name) == value for name, value in wanted.items()):
                    result.append(record)
        return result

    def count(self, kind: Optional[str] = None) -> int:
        return len(self.query(kind))
