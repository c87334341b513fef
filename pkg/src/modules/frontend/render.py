"""
Pretty-printer from surface documents back to .qiana text.

Parses back to a structurally equal document: binary and quantified
subformulas are parenthesized wherever they are not the whole formula.
"""

from typing import List

from src.modules.frontend.models import (
    Binary,
    Comparison,
    Equation,
    InContext,
    InContextTerm,
    ModalOperator,
    Name,
    Negation,
    Numeral,
    Predication,
    Quantified,
    QuotEscape,
    Quotation,
    SortDeclaration,
    TheoryDocument,
)


def render_term(node) -> str:
    if isinstance(node, Name):
        if not node.args:
            return node.name
        return f"{node.name}({', '.join(render_term(a) for a in node.args)})"
    if isinstance(node, Numeral):
        return node.digits
    if isinstance(node, Quotation):
        return f"[[ {render_formula(node.payload)} ]]"
    if isinstance(node, QuotEscape):
        return f"quot({render_term(node.term)})"
    raise TypeError(f"not a surface term: {node!r}")


def _unit(node) -> str:
    if isinstance(node, (Binary, Quantified)):
        return f"({render_formula(node)})"
    return render_formula(node)


def render_formula(node) -> str:
    if isinstance(node, Predication):
        return render_term(Name(node.name, node.args))
    if isinstance(node, Equation):
        return f"{render_term(node.left)} = {render_term(node.right)}"
    if isinstance(node, Comparison):
        return f"{render_term(node.left)} {node.op} {render_term(node.right)}"
    if isinstance(node, Negation):
        return f"~{_unit(node.body)}"
    if isinstance(node, Binary):
        return f"{_unit(node.left)} {node.op} {_unit(node.right)}"
    if isinstance(node, Quantified):
        binders = " ".join(f"{b.name}:{b.sort}" if b.sort else b.name for b in node.binders)
        return f"{node.quantifier} {binders}. {render_formula(node.body)}"
    if isinstance(node, InContext):
        return f"<{render_term(node.context)}> {_unit(node.body)}"
    if isinstance(node, InContextTerm):
        return f"<{render_term(node.context)}>! {render_term(node.term)}"
    if isinstance(node, ModalOperator):
        return f"{node.op} {_unit(node.body)}"
    raise TypeError(f"not a surface formula: {node!r}")


def _render_sort(declaration: SortDeclaration) -> str:
    if declaration.is_object_sort:
        return f"#sort {declaration.name}."
    args = " * ".join(declaration.args) if declaration.args else "()"
    if declaration.result is None:
        return f"#sort {declaration.name} : {args}."
    return f"#sort {declaration.name} : {args} -> {declaration.result}."


def render(doc: TheoryDocument) -> str:
    """Directives first, then axioms in order, then the conjecture."""
    lines: List[str] = [f"#option {key} {value}." for key, value in doc.options.items()]
    if doc.quotable:
        lines.append(f"#quotable {' '.join(doc.quotable)}.")
    lines.extend(_render_sort(s) for s in doc.sorts)
    lines.extend(f"{render_formula(a.formula)}." for a in doc.axioms)
    if doc.conjecture is not None:
        lines.append(f"#conjecture {render_formula(doc.conjecture.formula)}.")
    return "\n".join(lines) + "\n"
