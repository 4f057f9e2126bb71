import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

from Utils.Errors import ConfigError
from Utils.Logging.Store.Actions.LoggingActions import LoggingStoreActions
from Utils.Logging.Store.Logging import LoggingStore
from Utils.Store.Actions.ConfigStoreActions import ConfigStoreActions
from Utils.Store.Config import ConfigStore
from Utils.XlsxWriter import XlsxWriter

MODEL = {'n': 2, 'curve': {'genus': 0},
         'angles': {'alpha': [0.0, 0.0], 'beta': [1.5, 1.5],
                    'gamma': [0.7, 0.7], 'delta': [2.3, 2.3]}}


class TestMethods(unittest.TestCase):
    @classmethod
    def setUp(cls):
        ConfigStore.reset()
        LoggingStore.reset()

    @classmethod
    def test_config_defaults(cls):
        config = ConfigStore()
        assert config is ConfigStore()

        assert config.section('model') is None
        assert config.section('extended') == {}
        assert config.section('tolerances')['identity'] == 1e-9
        assert config.section('limits')['enumeration_n_cap'] == 4
        assert config.section('run')['seed'] == 0

    @classmethod
    def test_config_actions(cls):
        store = ConfigStore().config_store

        store.dispatch(ConfigStoreActions.set_model(MODEL))
        assert store.get_state()['model'] == MODEL

        store.dispatch(ConfigStoreActions.set_run(name='test', seed=5))
        assert store.get_state()['run']['name'] == 'test'
        assert store.get_state()['run']['seed'] == 5

        store.dispatch(ConfigStoreActions.set_tolerances({'identity': 1e-6}))
        assert store.get_state()['tolerances']['identity'] == 1e-6
        assert store.get_state()['tolerances']['quadrature_rel'] == 1e-10

        store.dispatch(ConfigStoreActions.set_extended_angles({'A0': 0.1}))
        assert store.get_state()['extended'] == {'A0': 0.1}

        store.dispatch(ConfigStoreActions.load_config(
            {'limits': {'probe_n_cap': 32}}
        ))
        assert store.get_state()['limits']['probe_n_cap'] == 32
        assert store.get_state()['model'] == MODEL

    @classmethod
    def test_config_errors(cls):
        store = ConfigStore().config_store

        for config in ({'colour': {}}, {'model': [1]},
                       {'run': {'seed': -1}}, {'run': {'seed': True}},
                       {'run': {'workers': 0}}, {'run': {'when': 1}},
                       {'tolerances': {'identity': 0.0}},
                       {'tolerances': {'accuracy': 1e-3}},
                       {'limits': {'probe_n_cap': 2.5}},
                       {'extended': {'A0': 'left'}}):
            try:
                store.dispatch(ConfigStoreActions.load_config(config))
                assert False
            except ConfigError:
                pass

        assert store.get_state()['tolerances']['identity'] == 1e-9

    @classmethod
    def test_config_files(cls):
        with TemporaryDirectory() as directory:
            path = Path(directory, 'config.json')

            store = ConfigStore().config_store
            store.dispatch(ConfigStoreActions.set_model(MODEL))
            store.dispatch(ConfigStoreActions.save_to_disk(str(path)))

            saved = ConfigStore.read_config_from_disk(path)
            assert saved == store.get_state()

            path.write_text('{"model": ')
            try:
                ConfigStore.read_json(path)
                assert False
            except ConfigError:
                pass

            path.write_text('[1, 2]')
            try:
                ConfigStore.read_json(path)
                assert False
            except ConfigError:
                pass

            try:
                ConfigStore.read_json(Path(directory, 'missing.json'))
                assert False
            except ConfigError:
                pass

        assert ConfigStore.get_config_path('uniform').exists()

    @classmethod
    def test_logging_store(cls):
        logging_store = LoggingStore()
        store = logging_store.logging_store
        assert store.get_state() is None

        store.dispatch(LoggingStoreActions.add_log(
            'partition', 'Verification', 'det', 'passed', 'Kasteleyn'
        ))
        state = store.get_state()
        assert state['what'] == 'partition'
        assert state['with'] == 'Kasteleyn'
        assert len(logging_store.log) == 1

        store.dispatch(LoggingStoreActions.add_log('a', 'b', 'c', 'd'))
        assert len(logging_store.log) == 2
        assert logging_store.log[-1][-1] == 'AztecFock.py'

        row = logging_store.format_logs()[0]
        assert row[3] == 'partition' and row[7] == 'passed'

        with TemporaryDirectory() as directory:
            store.dispatch(LoggingStoreActions.save_to_disk(directory))
            assert logging_store.saved.startswith(directory)
            assert Path(logging_store.saved).exists()

    @classmethod
    def test_xlsx_writer(cls):
        with TemporaryDirectory() as directory:
            xlsx_writer = XlsxWriter('partition table', directory)
            assert xlsx_writer.path.endswith('-partition-table.xlsx')

            xlsx_writer.add_worksheet('partition')
            xlsx_writer.write_headers('partition', ['n', 'Z', 'g', 'ok'])
            xlsx_writer.write_items('partition', [
                [1, 8.0, 1 - 1j, True],
                [2, float('inf'), None, False]
            ])
            assert xlsx_writer.widths['partition'][0] == 1
            assert xlsx_writer.widths['partition'][2] == len('1-1j')
            xlsx_writer.close()

            assert Path(xlsx_writer.path).exists()
