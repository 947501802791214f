"""Exceptions raised by assouad-sim."""


class AssouadSimError(Exception):
    pass


class InvalidArgument(AssouadSimError, ValueError):
    pass


class Unsupported(AssouadSimError, NotImplementedError):
    pass


class EmbeddingError(AssouadSimError):
    """Circulant embedding produced eigenvalues negative beyond tolerance."""


class WorkerError(AssouadSimError, RuntimeError):
    pass


class ArtifactError(AssouadSimError, OSError):
    pass
