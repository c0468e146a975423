"""Benchmark corpus, reconstructed circuits and the table harness."""

from .suite import (CORPUS, BenchConfig, BenchRecord, average_row, run_one, run_suite, to_csv,
                    to_table)

__all__ = ["CORPUS", "BenchConfig", "BenchRecord", "average_row", "run_one", "run_suite",
           "to_csv", "to_table"]
