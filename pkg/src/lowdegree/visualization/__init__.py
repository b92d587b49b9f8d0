from .figures import FigureCollection, ReportFigures, save_report_figures

__all__ = ["FigureCollection", "ReportFigures", "save_report_figures"]
