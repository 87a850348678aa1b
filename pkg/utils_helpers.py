"""
Helper Utilities
"""

import math
import sys
from typing import Optional, TextIO


class Helpers:
    """General helper functions"""

    @staticmethod
    def format_number(value: Optional[float], digits: int = 10) -> str:
        """Compact float formatting for human-readable reports"""
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "yes" if value else "no"
        if isinstance(value, int):
            return str(value)
        if not math.isfinite(value):
            return str(value)
        if value != 0 and (abs(value) >= 1e6 or abs(value) < 1e-4):
            return f"{value:.{digits - 1}e}"
        return f"{value:.{digits}g}"

    @staticmethod
    def format_angle(radians: float) -> str:
        """Angle in radians with its value in degrees"""
        return f"{radians:.10g} rad ({math.degrees(radians):.6g} deg)"

    @staticmethod
    def get_status_icon(status: str) -> str:
        """Get status icon"""
        status_icons = {
            'ok': '✅',
            'failed': '❌',
            'skipped': '⏭️',
            'certified': '🔒',
            'uncertified': '❔',
            'warning': '⚠️',
        }
        return status_icons.get(status.lower(), '⚪')

    # unit conversion: the core works with mu = 1, lengths unchanged

    @staticmethod
    def time_to_internal(t: float, mu: float) -> float:
        return t * math.sqrt(mu)

    @staticmethod
    def time_to_user(t: float, mu: float) -> float:
        return t / math.sqrt(mu)

    @staticmethod
    def velocity_to_user(v: float, mu: float) -> float:
        return v * math.sqrt(mu)

    @staticmethod
    def energy_to_user(h: float, mu: float) -> float:
        return h * mu

    # messages go to stderr so stdout stays machine-readable

    @staticmethod
    def show_success(message: str, stream: TextIO = None):
        """Show success message"""
        print(f"✅ {message}", file=stream or sys.stderr)

    @staticmethod
    def show_error(message: str, stream: TextIO = None):
        """Show error message"""
        print(f"❌ {message}", file=stream or sys.stderr)

    @staticmethod
    def show_warning(message: str, stream: TextIO = None):
        """Show warning message"""
        print(f"⚠️ {message}", file=stream or sys.stderr)

    @staticmethod
    def show_info(message: str, stream: TextIO = None):
        """Show info message"""
        print(f"ℹ️ {message}", file=stream or sys.stderr)
