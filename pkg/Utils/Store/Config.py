import json
from copy import deepcopy
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from pydux import create_store

from Utils.Errors import ConfigError
from Utils.Logging.Logging import Logging
from Utils.Singleton import Singleton
from Utils.Store.Actions.ConfigStoreActions import ConfigStoreActions

SECTIONS = ('model', 'run', 'tolerances', 'limits', 'extended')

RUN_KEYS = {'name', 'who', 'where', 'seed', 'workers'}


class ConfigStore(metaclass=Singleton):
    def __init__(self) -> None:
        self.logger = Logging(self.__class__.__name__).logger
        self.config_store = create_store(self.config)
        self.config_store.subscribe(self.config_changed)
        self._time = datetime.now().strftime("%d-%m-%Y-%H%M%S")

    def config_changed(self) -> None:
        """
        Log every change of the effective config

        :return: None
        """
        state = self.config_store.get_state()
        self.logger.debug('Config changed, run %s, model keys %s',
                          state['run'].get('name'),
                          sorted((state.get('model') or {}).keys()))

    @staticmethod
    def get_config_path(config: str) -> Path:
        """
        Get the path of a shipped config

        :param config: Config name

        :return: Path to file
        """
        return Path(__file__).parent.parent.parent.joinpath(
            'Configs', '{}.json'.format(config)
        )

    @staticmethod
    def write_config_to_disk(path: Path, config: Dict[str, Any]) -> None:
        """
        Save a config as JSON

        :param path: Path of the file
        :param config: Config to save

        :return: None
        """
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w') as file:
            json.dump(config, file, indent=2, sort_keys=True)
            file.write('\n')

    @staticmethod
    def read_json(path: Path) -> Dict[str, Any]:
        try:
            with open(path, 'r') as file:
                config = json.load(file)
        except OSError as error:
            raise ConfigError('Cannot read {}'.format(path)) from error
        except ValueError as error:
            raise ConfigError('{} is not valid JSON: {}'.format(
                path, error
            )) from error

        if not isinstance(config, dict):
            raise ConfigError('{} must hold a JSON object'.format(path))
        return config

    @staticmethod
    def read_config_from_disk(path: Path,
                              defaults: Optional[Dict[str, Any]] = None) \
            -> Dict[str, Any]:
        """
        Read a config and overlay it on the defaults

        :param path: Path to the saved config
        :param defaults: Default values

        :return: Effective config
        """
        config = ConfigStore.read_json(path)
        if defaults is None:
            return config
        return ConfigStore.overlay(deepcopy(defaults), config)

    @staticmethod
    def overlay(state: Dict[str, Any], config: Dict[str, Any]) \
            -> Dict[str, Any]:
        """
        Overlay a user config section by section; unknown sections and
        unknown keys inside a section are rejected

        :param state: Current state, modified in place
        :param config: User config

        :return: State
        """
        unknown = set(config) - set(SECTIONS)
        if unknown:
            raise ConfigError('Unknown config sections: {}'.format(
                ', '.join(sorted(unknown))
            ))

        if 'model' in config:
            if not isinstance(config['model'], dict):
                raise ConfigError('model must be an object')
            state['model'] = deepcopy(config['model'])

        if 'run' in config:
            ConfigStore.check_run(config['run'])
            state['run'].update(config['run'])

        for section in ('tolerances', 'limits'):
            if section in config:
                state[section] = ConfigStore.check_numbers(
                    section, state[section], config[section]
                )

        if 'extended' in config:
            ConfigStore.check_extended(config['extended'])
            state['extended'] = dict(config['extended'])

        return state

    @staticmethod
    def check_run(run: Dict[str, Any]) -> None:
        if not isinstance(run, dict):
            raise ConfigError('run must be an object')

        unknown = set(run) - RUN_KEYS
        if unknown:
            raise ConfigError('Unknown run keys: {}'.format(
                ', '.join(sorted(unknown))
            ))

        seed = run.get('seed', 0)
        if seed is not None and (not isinstance(seed, int) or
                                 isinstance(seed, bool) or seed < 0):
            raise ConfigError('seed must be a non-negative integer')

        workers = run.get('workers')
        if workers is not None and (not isinstance(workers, int) or
                                    workers < 1):
            raise ConfigError('workers must be a positive integer')

    @staticmethod
    def check_numbers(section: str, current: Dict[str, Any],
                      values: Dict[str, Any]) -> Dict[str, Any]:
        """
        Overlay named positive numbers; limits must be integers

        :param section: 'tolerances' or 'limits'
        :param current: Values in force
        :param values: Overrides

        :return: Merged values
        """
        if not isinstance(values, dict):
            raise ConfigError('{} must be an object'.format(section))

        unknown = set(values) - set(current)
        if unknown:
            raise ConfigError('Unknown {}: {}'.format(
                section, ', '.join(sorted(unknown))
            ))

        merged = dict(current)
        for key, value in values.items():
            kind = int if section == 'limits' else (int, float)
            if not isinstance(value, kind) or isinstance(value, bool) or \
                    value <= 0:
                raise ConfigError('{}.{} must be a positive number'.format(
                    section, key
                ))
            merged[key] = value

        return merged

    @staticmethod
    def check_extended(extended: Dict[str, Any]) -> None:
        numbers = (int, float)
        if not isinstance(extended, dict) or \
                not all(isinstance(v, numbers) for v in extended.values()):
            raise ConfigError('extended maps track names to angles')

    @property
    def time(self) -> str:
        """
        Get start time of the application

        :return: Starting time
        """
        return self._time

    @time.setter
    def time(self, time: str) -> None:
        self._time = time

    def section(self, name: str) -> Any:
        return self.config_store.get_state()[name]

    def state(self) -> Dict[str, Any]:
        return deepcopy(self.config_store.get_state())

    @staticmethod
    def config(state: Optional[Dict[str, Any]],
               action: Dict[str, Any]) -> Dict[str, Any]:
        """
        Handle state changes

        :param state: State
        :param action: Action

        :return: Mutated state
        """
        if state is None:
            state = ConfigStore.read_json(
                ConfigStore.get_config_path('defaults')
            )
            state.setdefault('model', None)
            state.setdefault('extended', {})

        kind = action.get('type')

        if kind == ConfigStoreActions.LOAD_CONFIG:
            state = ConfigStore.overlay(deepcopy(state), action.get('config'))
        elif kind == ConfigStoreActions.SET_MODEL:
            state = ConfigStore.overlay(deepcopy(state),
                                        {'model': action.get('model')})
        elif kind == ConfigStoreActions.SET_RUN:
            state = ConfigStore.overlay(deepcopy(state),
                                        {'run': action.get('run')})
        elif kind == ConfigStoreActions.SET_TOLERANCES:
            state = ConfigStore.overlay(
                deepcopy(state), {'tolerances': action.get('tolerances')}
            )
        elif kind == ConfigStoreActions.SET_EXTENDED_ANGLES:
            state = ConfigStore.overlay(deepcopy(state),
                                        {'extended': action.get('extended')})
        elif kind == ConfigStoreActions.SAVE_TO_DISK:
            ConfigStore.write_config_to_disk(Path(action.get('path')), state)

        return state
