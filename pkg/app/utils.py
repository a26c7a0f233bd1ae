#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Near Automorphism Lab - Utilities Module
Input validation, plain-text tables and JSON export
"""

import json
from typing import Any, List, Sequence, Tuple

from errors import ParseError


class DataValidator:
    """Data validation utilities"""

    @staticmethod
    def parse_int(value: str, name: str, minimum: int = 0) -> int:
        """Parse an integer flag value, rejecting anything below minimum"""
        try:
            number = int(str(value).strip())
        except ValueError:
            raise ParseError(f"{name} must be an integer, got {value!r}") from None
        if number < minimum:
            raise ParseError(f"{name} must be at least {minimum}, got {number}")
        return number


class TextUtils:
    """Text formatting utilities"""

    @staticmethod
    def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
        """Left-aligned fixed-width table"""
        cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
        lines = []
        for index, row in enumerate(cells):
            lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
            if index == 0:
                lines.append("  ".join("-" * width for width in widths))
        return "\n".join(lines)

    @staticmethod
    def format_pairs(pairs: Sequence[Tuple[str, Any]]) -> str:
        """Aligned "key: value" lines"""
        if not pairs:
            return ""
        width = max(len(key) for key, _ in pairs)
        return "\n".join(f"{key.ljust(width)} : {value}" for key, value in pairs)

    @staticmethod
    def capped(items: Sequence[Any], cap: int) -> Tuple[List[Any], int]:
        """First cap items and how many were left out"""
        shown = list(items[:cap])
        return shown, len(items) - len(shown)


class ExportUtils:
    """Report export utilities"""

    @staticmethod
    def to_json(data: Any) -> str:
        """Deterministic JSON: insertion-ordered keys, two-space indent, integers only"""
        return json.dumps(data, indent=2, ensure_ascii=False)

