import numpy as np
import pandas as pd
from matplotlib import pyplot as plt


class Grapher:
    """
    Graphing object that generates plots from result tables
    """

    def __init__(self, save_dir, show_graphs, save_graphs):
        """
        Inits new object
        :param save_dir: Directory to save plots
        :param show_graphs: Whether to show plots
        :param save_graphs: Whether to save plots
        """
        self.save_dir = save_dir
        self.show_graphs = show_graphs
        self.save_graphs = save_graphs

    def measure_levels(self, filename, table: pd.DataFrame, column: str = 'teit'):
        """
        Ball measures per level: one strip of bars for each level k, balls ordered by center
        :param filename: Name of plot
        :param table: measure table with columns 'level', 'center' and the measure column
        :param column: measure column to plot
        :return:
        """
        levels = sorted(table['level'].unique())
        fig, axes = plt.subplots(len(levels), 1, figsize=(8, 1.8 * len(levels)), squeeze=False)
        for ax, k in zip(axes[:, 0], levels):
            rows = table[table['level'] == k]
            values = rows[column].to_numpy()
            colors = np.where(values >= 0, 'tab:blue', 'tab:orange')
            ax.bar(np.arange(len(values)), values, color=colors)
            ax.axhline(0, color='0.5', linewidth=0.8)
            ax.set_ylabel(f'k={k}')
            if len(values) <= 27:
                ax.set_xticks(np.arange(len(values)))
                ax.set_xticklabels(rows['center'], rotation=90, fontsize=7)
            else:
                ax.set_xticks([])
            ax.grid(color="0.9")
        axes[-1, 0].set_xlabel('ball center')
        fig.tight_layout()
        self.save_or_show(fig, filename)

    def measure_agreement(self, filename, table: pd.DataFrame, x: str = 'teit', y: str = 'mu_inf_0_path'):
        """
        Scatter of two measure columns over all balls; the oracle identity puts every point on the diagonal
        """
        fig, ax = plt.subplots()
        ax.scatter(table[x], table[y], label="Ball", color="blue", alpha=0.5, s=4 ** 2)
        bound = max(1, int(np.abs(table[[x, y]].to_numpy()).max()))
        ideal = np.linspace(-bound, bound, 2)
        ax.plot(ideal, ideal, label="Identity", color="0.5", alpha=0.5, linestyle='dashed')
        ax.set_xlabel(x)
        ax.set_ylabel(y)
        ax.grid(color="0.9")
        ax.legend()
        self.save_or_show(fig, filename)

    def line_2d(self, filename, x, y, x_label, y_label):
        """
        2d Line plot
        :param filename: Name of plot
        :param x: X axis
        :param y: Y axis
        :param x_label: X label
        :param y_label: Y label
        :return:
        """
        fig, ax = plt.subplots()
        ax.plot(x, y, marker='o', label=y_label)
        ax.set_xlabel(x_label)
        ax.set_ylabel(y_label)
        ax.grid(color="0.9")
        ax.legend()
        self.save_or_show(fig, filename)

    def save_or_show(self, fig, filename):
        """
        Helper function to save of show plots
        :param fig: Figure object to save or show
        :param filename: Name of file to save or show
        :return:
        """
        if self.save_graphs:
            fig.savefig(self.save_dir + filename)
        if self.show_graphs:
            fig.show()
        plt.close(fig)
