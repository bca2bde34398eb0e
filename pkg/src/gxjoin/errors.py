"""Exception hierarchy for the package."""


class GxjoinError(Exception):
    """Base class for every error raised by this package."""


# -- group construction ------------------------------------------------------

class TableNotGroup(GxjoinError):
    """A multiplication table violates a group axiom."""


class OrderCapExceeded(GxjoinError):
    """A group exceeds the configured order cap."""


class InvalidReps(GxjoinError):
    """A caller-supplied coset representative list does not hit each coset once."""


class NotAHomomorphism(GxjoinError):
    """Generator images do not respect the relations of the domain group."""


class GeneratorsInsufficient(GxjoinError):
    """The supplied generators do not generate the domain group."""


# -- permutation machinery ---------------------------------------------------

class ClosureCapExceeded(GxjoinError):
    """Materializing a permutation group exceeded the element cap."""


class SizeCapExceeded(GxjoinError):
    """A graph is too large for an exhaustive search oracle."""


# -- graphs ------------------------------------------------------------------

class AsymmetricConnectionSet(GxjoinError):
    """A Cayley connection set is not closed under inverses."""


class IdentityInConnectionSet(GxjoinError):
    """A Cayley connection set contains the identity."""


# -- joins and scaffolds -----------------------------------------------------

class SigmaNotPartition(GxjoinError):
    """The declared blocks do not partition the base vertex set."""


class LambdaNotEpimorphism(GxjoinError):
    """A fiber projection map is not a graph epimorphism onto its block."""


class ThetaNotEpimorphism(GxjoinError):
    """The fiber group map is not an epimorphism onto the block stabilizer."""


class TheoremChoicesUnavailable(GxjoinError):
    """Theorem mode requires choices (complement reps, centralizing
    transversal) that this instance does not admit."""


class NotClosed(GxjoinError):
    """The regular candidate set is not closed under composition."""


class NotRegular(GxjoinError):
    """The regular candidate set does not act regularly."""


class SynthesisFailed(GxjoinError):
    """No valid lift choice was found within the search budget."""


class VerificationFailed(GxjoinError):
    """An internal cross-check failed; the result would have been unsound."""


# -- input handling ----------------------------------------------------------

class ScenarioError(GxjoinError):
    """A scenario file or group spec is malformed."""
