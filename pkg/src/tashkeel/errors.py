class TashkeelError(Exception):
    """Base class for all toolkit errors."""
