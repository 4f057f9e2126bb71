from typing import Any, Dict, Union


class ConfigStoreActions:
    LOAD_CONFIG = 'LOAD_CONFIG'
    SET_MODEL = 'SET_MODEL'
    SET_RUN = 'SET_RUN'
    SET_TOLERANCES = 'SET_TOLERANCES'
    SET_EXTENDED_ANGLES = 'SET_EXTENDED_ANGLES'
    SAVE_TO_DISK = 'SAVE_TO_DISK'

    @staticmethod
    def load_config(config: Dict[str, Any]) -> Dict[str, Any]:
        """
        Overlay a user config on the defaults

        :param config: Parsed JSON config

        :return: Action result
        """
        return {
            'type': ConfigStoreActions.LOAD_CONFIG,
            'config': config
        }

    @staticmethod
    def set_model(model: Dict[str, Any]) -> Dict[str, Any]:
        """
        Set model action

        :param model: Model section

        :return: Action result
        """
        return {
            'type': ConfigStoreActions.SET_MODEL,
            'model': model
        }

    @staticmethod
    def set_run(**run: Any) -> Dict[str, Union[str, Dict[str, Any]]]:
        """
        Set run action

        :param run: Any of name, who, where, seed, workers

        :return: Action result
        """
        return {
            'type': ConfigStoreActions.SET_RUN,
            'run': run
        }

    @staticmethod
    def set_tolerances(tolerances: Dict[str, float]) -> Dict[str, Any]:
        """
        Set tolerances action

        :param tolerances: Named tolerances to override

        :return: Action result
        """
        return {
            'type': ConfigStoreActions.SET_TOLERANCES,
            'tolerances': tolerances
        }

    @staticmethod
    def set_extended_angles(angles: Dict[str, float]) -> Dict[str, Any]:
        """
        Set extended angles action

        :param angles: Track name -> angle, for tracks outside 1..n

        :return: Action result
        """
        return {
            'type': ConfigStoreActions.SET_EXTENDED_ANGLES,
            'extended': angles
        }

    @staticmethod
    def save_to_disk(path: str) -> Dict[str, str]:
        """
        Save to disk action

        :param path: File to write the effective config to

        :return: Action result
        """
        return {
            'type': ConfigStoreActions.SAVE_TO_DISK,
            'path': path
        }
