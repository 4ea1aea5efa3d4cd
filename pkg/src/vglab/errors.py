"""Exception hierarchy shared by every vglab module."""


class VGLabError(Exception):
    pass


class ParseError(VGLabError, ValueError):
    pass


class InconsistentSamples(VGLabError):
    """No form of the requested degree fits the samples."""


class Underdetermined(VGLabError):
    """Sample points do not pin down a unique form."""


class NotPresentable(VGLabError):
    pass


class UnsupportedResolutionLength(VGLabError):
    pass


class DegenerateLine(VGLabError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotGloballyGeneratedAt(VGLabError):
    def __init__(self, point):
        super().__init__(f"sections do not span the fiber at {point}")
        self.point = point


class WrongFirstChern(VGLabError):
    pass


class NotInM36(VGLabError):
    pass


class ShapeMismatch(VGLabError):
    pass


class DegreeMismatch(VGLabError):
    pass


class InterpolationInconsistent(VGLabError):
    pass


class SamplingExhausted(VGLabError):
    pass
