"""
配置管理模块
负责加载 config/config.yaml，校验规模上限与数值参数
"""

import os
import yaml
from pathlib import Path
from typing import Dict, Any, Optional
from dotenv import load_dotenv

from .errors import LimitExceededError, ValidationError


PROJECT_ROOT = Path(__file__).resolve().parents[2]
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "config.yaml"

# 配置文件缺项时使用的规模上限
LIMIT_DEFAULTS: Dict[str, int] = {
    'max_degree': 24,
    'nc_max_k': 10,
    'gram_max_k': 8,
    'integration_max_k': 4,
    'moment_max_order': 12,
    'n3_max_order': 9,
    'series_max_order': 60,
}


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path
        self.config: Dict[str, Any] = {}
        self._load_config()

    def _resolve_config_path(self) -> Path:
        """显式路径优先，其次 PAULI_MOMENTS_CONFIG，最后是仓库内的默认配置"""
        if self.config_path:
            return Path(self.config_path)
        env_path = os.getenv("PAULI_MOMENTS_CONFIG")
        if env_path:
            return Path(env_path)
        return DEFAULT_CONFIG_PATH

    def _load_config(self):
        """加载并校验配置文件"""
        load_dotenv()

        config_file = self._resolve_config_path()
        if not config_file.exists():
            raise FileNotFoundError(f"配置文件不存在: {config_file}")
        with open(config_file, 'r', encoding='utf-8') as f:
            self.config = yaml.safe_load(f) or {}

        self._replace_env_vars(self.config)
        self._validate()
        self._create_directories()

    def _replace_env_vars(self, data: Any):
        """${VAR} 形式的字符串替换为环境变量值，未设置时保持原样"""
        if isinstance(data, dict):
            for key, value in data.items():
                data[key] = self._replace_env_vars(value)
        elif isinstance(data, list):
            for i, item in enumerate(data):
                data[i] = self._replace_env_vars(item)
        elif isinstance(data, str) and data.startswith("${") and data.endswith("}"):
            return os.getenv(data[2:-1], data)
        return data

    def _validate(self):
        """规模上限必须为正整数，ε 序列必须为正数"""
        for name, value in (self.config.get('limits') or {}).items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValidationError(f"配置项 limits.{name} 必须为正整数: {value!r}")
        schedule = self.get('density.eps_schedule')
        if schedule is not None:
            if not isinstance(schedule, list) or len(schedule) < 2:
                raise ValidationError(f"density.eps_schedule 至少需要两个值: {schedule!r}")
            if any(float(e) <= 0.0 for e in schedule):
                raise ValidationError(f"density.eps_schedule 必须全为正数: {schedule!r}")

    def _create_directories(self):
        paths = self.config.get('paths', {})
        for path_value in paths.values():
            if isinstance(path_value, str):
                self._absolute(path_value).mkdir(parents=True, exist_ok=True)

    @staticmethod
    def _absolute(path_value: str) -> Path:
        path = Path(path_value)
        return path if path.is_absolute() else PROJECT_ROOT / path

    def get(self, key: str, default: Any = None) -> Any:
        """按点分键取值，如 config.get('monte_carlo.seed', 42)"""
        value = self.config
        for k in key.split('.'):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key: str, value: Any):
        """设置配置值，中间层不存在时自动创建"""
        keys = key.split('.')
        node = self.config
        for k in keys[:-1]:
            node = node.setdefault(k, {})
        node[keys[-1]] = value

    def limit(self, name: str) -> int:
        """limits 段中的规模上限"""
        if name not in LIMIT_DEFAULTS:
            raise ValidationError(f"未知的规模上限: {name}")
        return int(self.get(f"limits.{name}", LIMIT_DEFAULTS[name]))

    def check_range(self, name: str, value: int, limit_name: str, minimum: int = 1) -> int:
        """minimum ≤ value ≤ limits.<limit_name>，否则抛出 LimitExceededError"""
        cap = self.limit(limit_name)
        if value < minimum or value > cap:
            raise LimitExceededError(name, value, cap)
        return value

    def get_path(self, path_key: str) -> Optional[Path]:
        """paths 段中的路径，相对路径按项目根目录解析"""
        path_value = self.get(f"paths.{path_key}")
        return self._absolute(path_value) if path_value else None


# 全局配置实例
config = ConfigManager()
