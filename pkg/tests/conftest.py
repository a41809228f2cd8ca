import time

import pytest

from endolattice import construct_sweep, sweep_compare


@pytest.fixture(scope="session")
def sweep4():
    t0 = time.perf_counter()
    report = sweep_compare(4)
    return report, time.perf_counter() - t0


@pytest.fixture(scope="session")
def sweep5():
    t0 = time.perf_counter()
    report = sweep_compare(5)
    return report, time.perf_counter() - t0


@pytest.fixture(scope="session")
def construct6():
    t0 = time.perf_counter()
    report = construct_sweep(6)
    return report, time.perf_counter() - t0


@pytest.fixture(scope="session")
def construct_reports(construct6):
    reports = {n: construct_sweep(n) for n in range(1, 6)}
    reports[6] = construct6[0]
    return reports
