#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Near Automorphism Lab - Configuration Module
Handles solver, sampling, output and logging settings
"""

import configparser
import os
from pathlib import Path
from typing import Any
import logging

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = str(Path(__file__).resolve().parent.parent / 'config.ini')


class Config:
    """Application configuration manager"""

    def __init__(self, config_file: str = DEFAULT_CONFIG_FILE):
        """Initialize configuration"""
        self.config_file = config_file
        self.config = configparser.ConfigParser()
        self.load_config()

    def load_config(self):
        """Load configuration from file"""
        try:
            if os.path.exists(self.config_file):
                self.config.read(self.config_file, encoding='utf-8')
                logger.info(f"Configuration loaded from {self.config_file}")
            else:
                self.create_default_config()
                logger.info("Default configuration created")
        except Exception as e:
            logger.error(f"Error loading configuration: {e}")
            self.create_default_config()

    def create_default_config(self):
        """Create default configuration file"""
        self.config['application'] = {
            'title': 'Near Automorphism Lab',
            'version': '1.0.0',
        }

        self.config['solver'] = {
            'node_budget': '1000000000',
            'workers': '1',
            'symmetry_breaking': 'false',
            'theorem_max_n': '9',
        }

        self.config['sampling'] = {
            'seed': '42',
            'samples': '1000',
        }

        self.config['output'] = {
            'format': 'table',
            'witness_cap': '200',
        }

        self.config['logging'] = {
            'level': 'INFO',
            'log_file': 'near_automorphism.log',
        }

        self.save_config()

    def save_config(self):
        """Save configuration to file"""
        try:
            with open(self.config_file, 'w', encoding='utf-8') as f:
                self.config.write(f)
            logger.info(f"Configuration saved to {self.config_file}")
        except Exception as e:
            logger.error(f"Error saving configuration: {e}")

    def get(self, section: str, key: str, fallback: Any = None) -> str:
        """Get configuration value"""
        try:
            return self.config.get(section, key, fallback=fallback)
        except Exception:
            return fallback

    def getint(self, section: str, key: str, fallback: int = 0) -> int:
        """Get integer configuration value"""
        try:
            return self.config.getint(section, key, fallback=fallback)
        except Exception:
            return fallback

    def getboolean(self, section: str, key: str, fallback: bool = False) -> bool:
        """Get boolean configuration value"""
        try:
            return self.config.getboolean(section, key, fallback=fallback)
        except Exception:
            return fallback

    def set(self, section: str, key: str, value: str):
        """Set configuration value"""
        try:
            if not self.config.has_section(section):
                self.config.add_section(section)
            self.config.set(section, key, str(value))
            self.save_config()
        except Exception as e:
            logger.error(f"Error setting configuration: {e}")

    # Convenience methods for common settings
    @property
    def app_title(self) -> str:
        return self.get('application', 'title', 'Near Automorphism Lab')

    @property
    def app_version(self) -> str:
        return self.get('application', 'version', '1.0.0')

    @property
    def node_budget(self) -> int:
        """Maximum number of explored assignments per search"""
        return self.getint('solver', 'node_budget', 1_000_000_000)

    @property
    def workers(self) -> int:
        return max(1, self.getint('solver', 'workers', 1))

    @property
    def symmetry_breaking(self) -> bool:
        return self.getboolean('solver', 'symmetry_breaking', False)

    @property
    def theorem_max_n(self) -> int:
        """Largest cycle length accepted by the theorem check"""
        return self.getint('solver', 'theorem_max_n', 9)

    @property
    def seed(self) -> int:
        return self.getint('sampling', 'seed', 42)

    @property
    def samples(self) -> int:
        return self.getint('sampling', 'samples', 1000)

    @property
    def output_format(self) -> str:
        fmt = self.get('output', 'format', 'table')
        return fmt if fmt in ('table', 'json') else 'table'

    @property
    def witness_cap(self) -> int:
        return self.getint('output', 'witness_cap', 200)

    @property
    def log_level(self) -> int:
        """Get logging level as a logging module constant"""
        name = self.get('logging', 'level', 'INFO').upper()
        return getattr(logging, name, logging.INFO)

    @property
    def log_file(self) -> str:
        return self.get('logging', 'log_file', 'near_automorphism.log')


# Global configuration instance
config = Config()
