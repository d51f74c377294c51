"""
Reliable reporting of problems back to the user is handled in two layers.

Failures inside the library are raised as exceptions derived from
MoufangError.  Each carries an optional ``witness`` so that a verdict can be
reproduced (a violating triple, a basis index, an offending operator...).

Reporting is based on a subscription model, just like a compiler driver:
       error("Some kind of message")
sends the message to every subscriber.  To route messages to stderr:
       with subscribe_errors(lambda msg: sys.stderr.write(msg + "\\n")):
            run_checks()
To route messages to a logger:
       log = logging.getLogger("mf")
       with subscribe_errors(log.error):
            run_checks()
To collect messages in a unit test:
       errs = []
       with subscribe_errors(errs.append):
            run_checks()
errors_reported() returns the number of errors reported so far and
clear_errors() resets the counter.
"""

from contextlib import contextmanager

_subscribers = []
_num_errors = 0


def error(message, where=None):
    """ Report an error to all subscribers """
    global _num_errors
    if where is None:
        errmsg = "{}".format(message)
    else:
        errmsg = "{}: {}".format(where, message)
    for subscriber in _subscribers:
        subscriber(errmsg)
    _num_errors += 1


def errors_reported():
    """ Return number of errors reported. """
    return _num_errors


def clear_errors():
    """ Clear the total number of errors reported. """
    global _num_errors
    _num_errors = 0


@contextmanager
def subscribe_errors(handler):
    """ Context manager that allows monitoring of error messages.
        handler is a callable taking a single argument, the message string.
    """
    _subscribers.append(handler)
    try:
        yield
    finally:
        _subscribers.remove(handler)


class MoufangError(Exception):
    """ Base class of every failure raised by the library. """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# ring / linalg
class RingError(MoufangError):
    pass


class NonPrimeCharacteristic(RingError):
    pass


class ReduciblePolynomial(RingError):
    pass


class UnsupportedSize(RingError):
    pass


class ElementOutOfRing(RingError):
    pass


class RingMismatch(RingError):
    pass


class NotInvertible(RingError):
    pass


class SingularMatrix(NotInvertible):
    pass


class TooLarge(MoufangError):
    pass


# loops
class LoopError(MoufangError):
    pass


class NotLatinSquare(LoopError):
    pass


class NoIdentity(LoopError):
    pass


class IndexOutOfRange(LoopError):
    pass


class MissingSecondArgument(LoopError):
    pass


class MissingThirdArgument(LoopError):
    pass


class NotMoufang(LoopError):
    pass


class NotASubloop(LoopError):
    pass


class NotNormal(LoopError):
    pass


class IllDefined(LoopError):
    pass


class NotPseudoautomorphism(LoopError):
    pass


class Timeout(LoopError):
    pass


class TableFormatError(LoopError):
    pass


# triality
class TrialityError(MoufangError):
    pass


class AutomorphismOrderViolation(TrialityError):
    pass


class NotMoufangElement(TrialityError):
    pass


class BaseNotAssociative(TrialityError):
    pass


class TrialityFails(TrialityError):
    pass


class OperatorDomainMismatch(TrialityError):
    pass


# zorn / products
class TooLargeToMaterialize(TooLarge):
    """ Raised when a loop exceeds the table cap; ``handle`` is still usable. """

    def __init__(self, message, handle=None):
        super().__init__(message)
        self.handle = handle


class NotAGroup(MoufangError):
    pass


class InvarianceNotEstablished(MoufangError):
    pass


class OutOfCatalog(MoufangError):
    pass


# extensions
class ExtensionError(MoufangError):
    pass


class KernelNotAbelian(ExtensionError):
    pass


class KernelNotNormal(ExtensionError):
    pass


class KernelNotClosed(ExtensionError):
    pass


class TooLargeToDecide(ExtensionError):
    pass


# descriptors
class DescriptorError(MoufangError):
    pass


# suites
class UnknownSuite(MoufangError):
    pass


class SuiteNotApplicable(MoufangError):
    pass
