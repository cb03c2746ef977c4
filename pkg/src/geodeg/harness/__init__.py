"""Oracles, diagram serving, renamed copies, round trips and file formats."""

from .oracle import OracleModeError, OracleSet, format_oracle, oracle_query, parse_oracle

__all__ = ["OracleSet", "OracleModeError", "oracle_query", "parse_oracle", "format_oracle"]
