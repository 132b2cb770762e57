from dotenv import load_dotenv
import os


class Config:
    _instance = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Config, cls).__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        # Only initialize once per process
        if Config._initialized:
            return

        # Load .env file
        self._load_env_file()

        # Labeling configuration
        self.threshold = self._get_threshold()
        self.group_label_rule = self._get_group_label_rule()

        # Permutation test configuration
        self.exact_limit = self._get_exact_limit()
        self.monte_carlo_samples = self._get_monte_carlo_samples()
        self.seed = self._get_seed()

        # Model configuration
        self.ridge_l2 = self._get_ridge_l2()
        self.logistic_l2 = self._get_logistic_l2()

        # Output configuration
        self.output_format = self._get_output_format()
        self.plot_bins = self._get_plot_bins()

        # Logging configuration
        self.log_level = self._get_log_level()
        self.log_file = self._get_log_file()

        Config._initialized = True

    @classmethod
    def reset(cls) -> None:
        """Drop the cached instance so the next Config() re-reads the environment"""
        cls._instance = None
        cls._initialized = False

    def _load_env_file(self) -> None:
        env_path = os.getenv("ENV_PATH")
        if env_path:
            load_dotenv(env_path)
        else:
            # Try to find .env in current directory or parent directory
            current_dir = os.path.dirname(os.path.abspath(__file__))
            parent_dir = os.path.dirname(current_dir)

            if os.path.exists(os.path.join(current_dir, ".env")):
                load_dotenv(os.path.join(current_dir, ".env"))
            elif os.path.exists(os.path.join(parent_dir, ".env")):
                load_dotenv(os.path.join(parent_dir, ".env"))
            # Defaults apply when no .env is present

    def _get_threshold(self) -> float:
        """Get CWI threshold from environment variable"""
        return float(os.getenv("LCP_THRESHOLD", "0.375"))

    def _get_group_label_rule(self) -> str:
        """Get group CWI gold rule (majority or mean_threshold)"""
        return os.getenv("LCP_GROUP_LABEL_RULE", "majority")

    def _get_exact_limit(self) -> int:
        """Get the largest partition count enumerated exactly"""
        return int(os.getenv("LCP_EXACT_LIMIT", "10000000"))

    def _get_monte_carlo_samples(self) -> int:
        """Get the Monte-Carlo sample count used beyond the exact limit"""
        return int(os.getenv("LCP_MONTE_CARLO_SAMPLES", "1000000"))

    def _get_seed(self) -> int:
        """Get default random seed"""
        return int(os.getenv("LCP_SEED", "0"))

    def _get_ridge_l2(self) -> float:
        """Get ridge regularization strength"""
        return float(os.getenv("LCP_RIDGE_L2", "1.0"))

    def _get_logistic_l2(self) -> float:
        """Get logistic regression regularization strength"""
        return float(os.getenv("LCP_LOGISTIC_L2", "1.0"))

    def _get_output_format(self) -> str:
        """Get default output format"""
        return os.getenv("LCP_OUTPUT_FORMAT", "tsv").lower()

    def _get_plot_bins(self) -> int:
        """Get default histogram bin count"""
        return int(os.getenv("LCP_PLOT_BINS", "10"))

    def _get_log_level(self) -> str:
        """Get logging level"""
        return os.getenv("LCP_LOG_LEVEL", "INFO").upper()

    def _get_log_file(self) -> str:
        """Get optional log file path (empty disables file logging)"""
        return os.getenv("LCP_LOG_FILE", "")

    def validate_config(self) -> bool:
        """Validate configuration values"""
        try:
            if not 0.0 <= self.threshold <= 1.0:
                return False
            if self.group_label_rule not in ("majority", "mean_threshold"):
                return False
            if self.exact_limit < 1 or self.monte_carlo_samples < 1:
                return False
            if self.ridge_l2 < 0 or self.logistic_l2 < 0:
                return False
            if self.output_format not in ("tsv", "json"):
                return False
            if self.plot_bins < 1:
                return False

            return True
        except Exception:
            return False
