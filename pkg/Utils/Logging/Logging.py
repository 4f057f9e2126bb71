import logging


class Logging:
    def __init__(self, name: str, level: int = logging.DEBUG) -> None:
        logging.basicConfig(filename='AztecFock.log',
                            format='%(asctime)s - %(name)s - %(levelname)s - '
                                   '%(message)s',
                            level=level)

        self.logger = logging.getLogger(name)

    @staticmethod
    def set_level(level: int) -> None:
        """
        Change the level of the root logger, used by the quiet flag

        :param level: New logging level

        :return: None
        """
        logging.getLogger().setLevel(level)
