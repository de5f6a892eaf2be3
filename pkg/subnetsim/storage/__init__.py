from subnetsim.storage.result_writer import ResultWriter, SUMMARY_COLUMNS, CCDF_COLUMNS

__all__ = ["ResultWriter", "SUMMARY_COLUMNS", "CCDF_COLUMNS"]
