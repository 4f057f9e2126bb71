from datetime import datetime

from typing import Dict, Optional, Union


class LoggingStoreActions:
    ADD_LOG = 'ADD_LOG'
    SAVE_TO_DISK = 'SAVE_TO_DISK'

    @staticmethod
    def add_log(what: str,
                why: str,
                how: str,
                result: str,
                engine: str = 'AztecFock.py') -> \
            Dict[str, Union[str, Dict[str, Union[datetime, str]]]]:
        """
        Add log action

        :param what: What was computed
        :param why: Which check or output it serves
        :param how: Method used
        :param result: Outcome
        :param engine: Module that did the work

        :return: Action result
        """
        return {
            'type': LoggingStoreActions.ADD_LOG,
            'log': {
                'why': why,
                'what': what,
                'how': how,
                'result': result,
                'with': engine
            }
        }

    @staticmethod
    def save_to_disk(out_dir: Optional[str] = None) -> Dict[str, str]:
        """
        Save to disk action

        :param out_dir: Output root, the default output folder when omitted

        :return: Action result
        """
        return {
            'type': LoggingStoreActions.SAVE_TO_DISK,
            'out_dir': out_dir
        }
