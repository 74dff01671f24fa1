class ResourceLimitError(RuntimeError):
    """Raised when a request exceeds a desk-scale resource guard."""
