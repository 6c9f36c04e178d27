"""Exception hierarchy shared across the package.

Exit-code mapping used by the command line front end:

* 0  success (and, for colouring runs, the verifier accepted the output)
* 1  verified failure: a colour budget was exceeded or the verifier found a
     witness path
* 2  usage error: bad arguments, malformed input files, domain violations
* 3  internal invariant violation: a postcondition the code promises
     unconditionally was observed to fail
"""


class PathfreeError(Exception):
    """Base class for package errors."""


class UsageError(PathfreeError):
    """Malformed input, out-of-domain argument, or bad configuration."""


class ContractViolation(UsageError):
    """A caller-supplied object breaks a documented precondition."""


class SizeCapError(UsageError):
    """An exact computation was requested beyond its configured size cap."""


class InternalInvariantError(PathfreeError):
    """A postcondition that should hold unconditionally failed; a bug."""
