"""Exception types raised by dsclust."""


class DSClustError(Exception):
    pass


class EmptyFocal(DSClustError, ValueError):
    pass


class MassOutOfRange(DSClustError, ValueError):
    pass


class ConflictAtOne(DSClustError, ValueError):
    """A conflict of 1 would give an infinite weight of evidence."""


class TooLarge(DSClustError, ValueError):
    """Exhaustive enumeration requested on an instance above its size bound."""


class SameCluster(DSClustError, ValueError):
    pass


class UnknownMethod(DSClustError, ValueError):
    pass


class BadSize(DSClustError, ValueError):
    pass


class UnknownFormat(DSClustError, ValueError):
    pass


class UsageError(DSClustError):
    pass
