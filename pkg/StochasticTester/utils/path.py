from pathlib import Path

# configuration files
CONFIG_DIR = Path() / 'config'
STOCHASTIC_CONFIG = CONFIG_DIR / 'stochastic_config.yml'
