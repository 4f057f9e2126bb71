import unittest

from Tests.AztecFock import TestMethods as CommandLineTests
from Tests.Curve import TestMethods as CurveTests
from Tests.Inverse import TestMethods as InverseTests
from Tests.Kasteleyn import TestMethods as KasteleynTests
from Tests.KernelForms import TestMethods as KernelFormTests
from Tests.Lattice import TestMethods as LatticeTests
from Tests.LimitShape import TestMethods as LimitShapeTests
from Tests.Measures import TestMethods as MeasureTests
from Tests.Output import TestMethods as OutputTests
from Tests.Store import TestMethods as StoreTests


if __name__ == '__main__':
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    for tests in (LatticeTests, CurveTests, KasteleynTests, KernelFormTests,
                  InverseTests, MeasureTests, LimitShapeTests, OutputTests,
                  StoreTests, CommandLineTests):
        suite.addTests(loader.loadTestsFromTestCase(tests))

    unittest.TextTestRunner(verbosity=2).run(suite)
