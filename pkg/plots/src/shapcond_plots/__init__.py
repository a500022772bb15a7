from .figures import (SchemaError, class_color, collect_facets, method_class,
                      plot_mae_boxplots, plot_msev_vs_mae)

__all__ = ["SchemaError", "class_color", "collect_facets", "method_class",
           "plot_mae_boxplots", "plot_msev_vs_mae"]
