from abc import ABC, abstractmethod
from typing import Generic, TypeVar

T = TypeVar('T')


class RepositoryABC(ABC, Generic[T]):
    """Abstract file repository: one artifact kind per implementation"""

    @abstractmethod
    def load(self, path: str) -> T:
        """Read and validate the artifact stored at path"""
        pass

    @abstractmethod
    def save(self, entity: T, path: str) -> None:
        """Write the artifact to path, replacing any existing file"""
        pass

    @abstractmethod
    def exists(self, path: str) -> bool:
        """Check whether an artifact file exists at path"""
        pass
