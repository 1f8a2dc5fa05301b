import abc

from betatrix.buffers import DataBuffer
from betatrix.sources.streams import RandomStream


class EnsembleSource(abc.ABC):
    """
    A random matrix ensemble that can be sampled in batches.
    `sample` returns a DataBuffer whose signals all share the sample axis (axis 0).
    """

    @abc.abstractmethod
    def sample(self, stream: RandomStream, size: int) -> DataBuffer:
        pass

    @property
    @abc.abstractmethod
    def params(self) -> dict:
        pass

    def config_json(self):
        return {"ensemble": self.__class__.__name__, "params": self.params}

    def __repr__(self):
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.__class__.__name__}({params})"


__all__ = ["EnsembleSource"]
