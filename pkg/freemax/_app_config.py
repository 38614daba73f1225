import os


class FreeMaxAppConfig:
    quantile_tol = 1e-12 # absolute, on CDF values
    quantile_xtol = 1e-15 # absolute, on abscissae
    bisection_max_iterations = 200
    bracket_max_expansions = 200

    max_n = 10**9
    tail_tol = 1e-12 # density level treated as the end of an unbounded domain
    tail_max_doublings = 60
    grid_floor = 1e-6 # relative offset of the first grid node from an open edge
    weibull_edge_fraction = 0.01
    weibull_edge_density = 100
    default_grid_points = 10**5
    refinement_xatol = 1e-12

    domination_tol = 1e-12
    monotone_tol = 1e-12
    sandwich_tol = 1e-10
    window_tol = 1e-9

    machine_digits = 17
    human_digits = 6

    threads_env_var = "FREEMAX_THREADS"

    @staticmethod
    def worker_count() -> int:
        raw_value = os.environ.get(FreeMaxAppConfig.threads_env_var)
        if raw_value is None or raw_value.strip() == "":
            return os.cpu_count() or 1

        try:
            workers = int(raw_value)
        except ValueError:
            raise ValueError(f"{FreeMaxAppConfig.threads_env_var} must be an integer, got {raw_value!r}")

        if workers < 1:
            raise ValueError(f"{FreeMaxAppConfig.threads_env_var} must be positive, got {workers}")
        return workers
