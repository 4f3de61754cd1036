from abc import ABC, abstractmethod
from models.errors import StorageError
from pathlib import Path
import logging
import os

logger = logging.getLogger(__name__)


class FileStorageService(ABC):
    @abstractmethod
    def save_file(self, file_bytes: bytes, file_key: str) -> str:
        """Save a file and return its storage path.

        Args:
            file_bytes: The content of the file in bytes.
            file_key: Path of the file relative to the storage root.

        Returns:
            The storage path of the saved file.
        """
        pass

    @abstractmethod
    def get_file(self, file_path: str) -> bytes:
        """Retrieve a file from storage.

        Args:
            file_path: Storage path, or a key relative to the root.

        Returns:
            The file content in bytes.
        """
        pass

    def save_text(self, text: str, file_key: str) -> str:
        return self.save_file(text.encode("utf-8"), file_key)

    def get_text(self, file_path: str) -> str:
        return self.get_file(file_path).decode("utf-8")


class LocalFileStorageService(FileStorageService):
    """Files under an experiment output directory."""

    def __init__(self, base_path: str):
        self.base_path = base_path

    def _resolve(self, file_key: str) -> str:
        if os.path.isabs(file_key):
            return file_key
        return os.path.join(self.base_path, file_key)

    def save_file(self, file_bytes: bytes, file_key: str) -> str:
        file_path = self._resolve(file_key)
        try:
            Path(file_path).parent.mkdir(parents=True, exist_ok=True)
            with open(file_path, "wb") as f:
                f.write(file_bytes)
        except OSError as e:
            raise StorageError(file_path, e.strerror or str(e)) from e
        logger.info("[Storage] Wrote %s (%d bytes)", file_path, len(file_bytes))
        return file_path

    def get_file(self, file_path: str) -> bytes:
        file_path = self._resolve(file_path)
        try:
            with open(file_path, "rb") as f:
                return f.read()
        except OSError as e:
            raise StorageError(file_path, e.strerror or str(e)) from e
