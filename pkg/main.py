#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Near Automorphism Lab - Main Entry Point
Exact displacement of vertex permutations, minimum positive displacement and
near automorphism checks for small graphs
Version: 1.0.0
"""

import sys
import logging
from pathlib import Path

# Add the app directory to Python path
app_dir = Path(__file__).parent / 'app'
sys.path.insert(0, str(app_dir))

# Import our modules
from config import config
import cli


def setup_logging():
    """Log to the configured file and to stderr; reports own stdout"""
    logging.basicConfig(
        level=config.log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(config.log_file, encoding='utf-8'),
            logging.StreamHandler()
        ]
    )


logger = logging.getLogger(__name__)


def main():
    """Main entry point"""
    setup_logging()
    try:
        return cli.main(sys.argv[1:])
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        return 1


if __name__ == '__main__':
    sys.exit(main())
