from typing import Any, Dict


class Singleton(type):
    _instances: Dict[type, Any] = {}

    def __call__(cls, *args, **kwargs):
        if cls not in cls._instances:
            cls._instances[cls] = \
                super(Singleton, cls).__call__(*args, **kwargs)
        return cls._instances[cls]

    def reset(cls) -> None:
        """
        Forget the shared instance so the next call builds a fresh one

        :return: None
        """
        Singleton._instances.pop(cls, None)
