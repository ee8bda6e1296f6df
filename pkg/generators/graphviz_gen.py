import os

from graphviz import Graph

from models.tda import PairMatching, WalkBase


class GraphvizGenerator:
    """Generador de gráficos Graphviz para visualizar emparejamientos"""

    def build_graph(self, matching: PairMatching, ell: int, titulo=None) -> Graph:
        """
        Grafo de 2ℓ vértices: fila superior 0..ℓ-1, fila inferior ℓ..2ℓ-1.
        Aristas del emparejamiento sólidas, aristas de Y punteadas,
        lazos como aristas de un vértice a sí mismo.
        """
        base = WalkBase(ell)
        dot = Graph(comment="Emparejamiento", format="png")
        dot.attr(rankdir="TB", splines="true")
        dot.attr("node", shape="circle", style="filled", fillcolor="lightblue")
        if titulo:
            dot.attr(label=titulo, labelloc="t", fontsize="14")

        for fila, vertices in (("sup", range(ell)), ("inf", range(ell, 2 * ell))):
            with dot.subgraph(name=f"fila_{fila}") as sub:
                sub.attr(rank="same")
                for v in vertices:
                    sub.node(f"v{v}", str(v + 1))

        for i, j in base.y_edges:
            dot.edge(f"v{i}", f"v{j}", style="dashed", color="gray50")
        for i, j in matching.pairs:
            dot.edge(f"v{i}", f"v{j}", color="black", penwidth="2")
        for v in matching.loops:
            dot.node(f"v{v}", fillcolor="gold")
            dot.edge(f"v{v}", f"v{v}", color="black", penwidth="2")
        return dot

    def generate_matching_graph(self, matching, ell, outpath="static/emparejamiento", titulo=None):
        """Renderiza el grafo; si falta el binario de Graphviz guarda solo el .dot"""
        dot = self.build_graph(matching, ell, titulo)
        carpeta = os.path.dirname(outpath)
        if carpeta:
            os.makedirs(carpeta, exist_ok=True)
        try:
            dot.render(outpath, cleanup=True)
            return f"{outpath}.png"
        except Exception:
            dot.save(f"{outpath}.dot")
            return f"{outpath}.dot"
