"""Pre-order visitors and splicing transformers over program trees."""

from __future__ import annotations

from . import ast


class Visitor:
    """Read-only pre-order walk. Override ``visit_<NodeClass>``; the default
    visits children."""

    def visit(self, node):
        meth = getattr(self, "visit_" + type(node).__name__, None)
        if meth is not None:
            return meth(node)
        return self.generic_visit(node)

    def generic_visit(self, node):
        for child in children(node):
            self.visit(child)


def children(node) -> tuple:
    if isinstance(node, ast.Program):
        return node.body
    if isinstance(node, ast.GateDecl):
        return node.body
    if isinstance(node, ast.If):
        return (node.body,)
    return ()


class Transformer:
    """Rebuilding walk. A ``visit_<NodeClass>`` method may return a node, a
    list of nodes (spliced in place), or ``None`` (deleted). Unhandled nodes
    are rebuilt from their transformed children."""

    def visit(self, node):
        meth = getattr(self, "visit_" + type(node).__name__, None)
        if meth is not None:
            return meth(node)
        return self.generic_visit(node)

    def visit_list(self, nodes) -> tuple:
        out = []
        for n in nodes:
            r = self.visit(n)
            if r is None:
                continue
            if isinstance(r, (list, tuple)):
                out.extend(r)
            else:
                out.append(r)
        return tuple(out)

    def generic_visit(self, node):
        if isinstance(node, ast.Program):
            return ast.Program(node.version, self.visit_list(node.body), node.pos)
        if isinstance(node, ast.GateDecl):
            return ast.GateDecl(node.name, node.params, node.qparams,
                                self.visit_list(node.body), node.pos)
        if isinstance(node, ast.If):
            body = self.visit(node.body)
            if body is None:
                return None
            if isinstance(body, (list, tuple)):
                return [ast.If(node.creg, node.value, b, node.pos) for b in body]
            return ast.If(node.creg, node.value, body, node.pos)
        return node


def traverse(p: ast.Program, visitor):
    """Run ``visitor`` over ``p``. Transformers return the rebuilt program;
    plain visitors return whatever their ``result`` attribute holds."""
    r = visitor.visit(p)
    if isinstance(visitor, Transformer):
        return r
    return getattr(visitor, "result", r)
