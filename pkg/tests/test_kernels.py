import subprocess
import sys

import numpy as np

from epicurve import _kernels


def test_trajectory_backends_bit_identical():
    args = (_kernels.KIND_SEIRS, 0.6, 0.2, 0.3, 0.02,
            1.0 - 1e-4, 0.0, 1e-4, 0.0, 4000, 0.05)
    jit_or_plain = _kernels.rk4_trajectory(*args)
    plain = _kernels._rk4_trajectory_impl(*args)
    assert np.array_equal(jit_or_plain, plain)


def test_batch_backends_bit_identical():
    beta = np.linspace(0.1, 0.9, 30)
    gamma = np.linspace(0.05, 0.3, 30)
    i0 = np.full(30, 1e-5)
    a = _kernels.sir_cumulative_batch(beta, gamma, i0, 40, 20)
    b = _kernels._sir_batch_numpy(beta, gamma, i0, 40, 20)
    c = _kernels._sir_batch_impl(beta, gamma, i0, 40, 20)
    assert np.array_equal(a, b)
    assert np.array_equal(b, c)


def test_batch_matches_trajectory_sampling():
    # the fitting kernel and the trajectory kernel must agree exactly
    beta, gamma, i0 = 0.3, 0.1, 1e-5
    batch = _kernels.sir_cumulative_batch(
        np.array([beta]), np.array([gamma]), np.array([i0]), 50, 20)[:, 0]
    traj = _kernels.rk4_trajectory(_kernels.KIND_SIR, beta, gamma, 0.0, 0.0,
                                   1.0 - i0, 0.0, i0, 0.0, 49 * 20, 0.05)
    sampled = traj[::20, 2] + traj[::20, 3]
    assert np.array_equal(batch, sampled)


def test_env_flag_selects_numpy_backend():
    code = (
        "import os\n"
        "os.environ['EPICURVE_DISABLE_NUMBA'] = '1'\n"
        "from epicurve import _kernels\n"
        "assert _kernels.BACKEND == 'numpy'\n"
        "assert _kernels.rk4_trajectory is _kernels._rk4_trajectory_impl\n"
        "print('ok')\n"
    )
    out = subprocess.run([sys.executable, "-c", code],
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "ok"


def test_disabled_backend_output_matches_default():
    code = (
        "import os\n"
        "os.environ['EPICURVE_DISABLE_NUMBA'] = '1'\n"
        "import epicurve as ec\n"
        "traj = ec.integrate(ec.ModelKind.SIR,"
        " ec.ModelParams(beta=0.5, gamma=0.25), 20)\n"
        "import sys\n"
        "sys.stdout.write(traj.to_csv())\n"
    )
    out = subprocess.run([sys.executable, "-c", code],
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    import epicurve as ec
    traj = ec.integrate(ec.ModelKind.SIR, ec.ModelParams(beta=0.5, gamma=0.25),
                        20)
    assert out.stdout == traj.to_csv()
