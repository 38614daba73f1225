class DistributionNameResolver:
    _Name_Map = {
        # Frechet regime
        "frechet": "frechet",
        "log_logistic": "log_logistic",
        "loglogistic": "log_logistic",
        "cauchy": "cauchy",

        # Weibull regime
        "weibull": "weibull",
        "endpoint_power": "endpoint_power",
        "uniform01": "uniform01",
        "uniform": "uniform01",

        # Gumbel regime
        "gumbel": "gumbel",
        "stretched_gumbel": "stretched_gumbel",
        "std_normal": "std_normal",
        "normal": "std_normal"
    }

    _Parameter_Map = {
        "frechet": ("alpha",),
        "log_logistic": ("alpha",),
        "cauchy": (),
        "weibull": ("alpha",),
        "endpoint_power": ("k", "alpha", "omega"),
        "uniform01": (),
        "gumbel": (),
        "stretched_gumbel": ("alpha",),
        "std_normal": ()
    }

    _Default_Parameter_Map = {
        "frechet": (2.0,),
        "log_logistic": (2.0,),
        "weibull": (-2.0,),
        "endpoint_power": (1.0, -2.0, 1.0),
        "stretched_gumbel": (2.0,)
    }

    @staticmethod
    def resolve(name: str) -> str:
        if name is None or not isinstance(name, str):
            raise ValueError("distribution name must be a non-empty string")

        stripped_name = name.lower().strip().replace("-", "_")
        if stripped_name not in DistributionNameResolver._Name_Map:
            raise ValueError(f"Unknown distribution: {stripped_name}")

        return DistributionNameResolver._Name_Map[stripped_name]

    @staticmethod
    def parameter_names(name: str) -> tuple[str, ...]:
        return DistributionNameResolver._Parameter_Map[DistributionNameResolver.resolve(name)]

    @staticmethod
    def default_parameters(name: str) -> tuple[float, ...]:
        return DistributionNameResolver._Default_Parameter_Map.get(DistributionNameResolver.resolve(name), ())

    @staticmethod
    def canonical_names() -> list[str]:
        return list(DistributionNameResolver._Parameter_Map.keys())
