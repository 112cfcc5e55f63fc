from multisect.utils.exceptions import ValidationError


def as_error_detail(error: ValidationError):
    if isinstance(error.detail, (list, dict)):
        return error.detail
    return [error.detail]


class KeyedListExceptionHandler:
    """
    Appends the detail of every ``ValidationError`` raised inside the block to
    ``errors[key]``; other exceptions propagate.
    """

    def __init__(self, key, errors: dict):
        self.key = key
        self.errors = errors

    def __enter__(self):
        pass

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type and issubclass(exc_type, ValidationError):
            error = exc_val if exc_val else ValidationError()
            self.errors.setdefault(self.key, []).append(as_error_detail(error))
        elif exc_val:
            raise exc_val
        return True


class PairExceptionHandler:
    def __init__(self, key, errors: dict):
        self.key = key
        self.errors = errors

    def __enter__(self):
        pass

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type:
            if issubclass(exc_type, ValidationError):
                error = exc_val if exc_val else ValidationError()
                self.errors.update({self.key: as_error_detail(error)})
            elif exc_val:
                raise exc_val
        return True
