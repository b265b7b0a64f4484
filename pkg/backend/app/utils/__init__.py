"""
Rendering helpers for residues, rational tables and verification reports.
"""

from .table_formatter import format_as_ascii_table, format_fraction, report_rows, residue_rows, to_csv

__all__ = ['format_as_ascii_table', 'format_fraction', 'report_rows', 'residue_rows', 'to_csv']
