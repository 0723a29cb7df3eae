import pytest

from minijif.labels import ConfPolicy, EMPTY, IntegPolicy, JoinNode, LabelVar, MeetNode
from minijif.lexer import LexError, tokenize
from minijif.parser import ParseError, parse_label, parse_program
from minijif.pretty import expr_to_text, pretty_print
from minijif.principals import BOTTOM, Named, TOP
from minijif import syntax as ast
from conftest import corpus_files


class TestLexer:
    def test_label_tokens(self):
        kinds = [t.kind for t in tokenize("{Alice->_;}")]
        assert kinds == ["{", "IDENT", "->", "_", ";", "}", "EOF"]

    def test_empty_input(self):
        toks = tokenize("")
        assert [t.kind for t in toks] == ["EOF"]

    def test_unexpected_character(self):
        with pytest.raises(LexError) as err:
            tokenize("@")
        assert err.value.span.start == (1, 1)

    def test_spans_track_lines(self):
        toks = tokenize("foo\n  bar")
        assert toks[0].span.start == (1, 1)
        assert toks[1].span.start == (2, 3)
        assert toks[1].span.end == (2, 6)

    def test_string_escapes(self):
        tok = tokenize(r'"a\"b\n"')[0]
        assert tok.value == 'a"b\n'

    def test_unterminated_string(self):
        with pytest.raises(LexError):
            tokenize('"oops')

    def test_comment_skipped(self):
        assert [t.kind for t in tokenize("// nothing\nx")] == ["IDENT", "EOF"]

    def test_maximal_munch(self):
        kinds = [t.kind for t in tokenize("a->b<-c>=d==e")]
        assert kinds == ["IDENT", "->", "IDENT", "<-", "IDENT", ">=", "IDENT", "==", "IDENT", "EOF"]


class TestParseLabel:
    def test_owner_star(self):
        assert parse_label("{Owner->*}") == ConfPolicy(Named("Owner"), (TOP,))

    def test_meet(self):
        lab = parse_label("{Alice->Chuck meet Bob->Chuck}")
        assert isinstance(lab, MeetNode)
        assert lab.left == ConfPolicy(Named("Alice"), (Named("Chuck"),))

    def test_empty(self):
        assert parse_label("{}") == EMPTY

    def test_pair_form_desugars_to_join(self):
        lab = parse_label("{Alice->_; Alice<-*}")
        assert lab == JoinNode(
            ConfPolicy(Named("Alice"), (BOTTOM,)),
            IntegPolicy(Named("Alice"), (TOP,)),
        )

    def test_reader_list(self):
        assert parse_label("{A->B,C,*}") == ConfPolicy(
            Named("A"), (Named("B"), Named("C"), TOP)
        )

    def test_label_variable(self):
        assert parse_label("{L}") == LabelVar("L")

    def test_parenthesized_join_under_meet(self):
        lab = parse_label("{(Alice->*; Bob->*) meet Chuck->*}")
        assert isinstance(lab, MeetNode)
        assert isinstance(lab.left, JoinNode)

    def test_empty_reader_list_rejected(self):
        with pytest.raises(ParseError):
            parse_label("{Alice->}")

    def test_trailing_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse_label("{Alice->*} x")


class TestParseProgram:
    def test_secret_declaration(self):
        # the two-component pair label on a local declaration
        program = parse_program(
            "class C {\n    void m{}() {\n        int{Alice->_; Alice<-*} secret;\n    }\n}"
        )
        cls = program.decls[0]
        stmt = cls.methods[0].body.stmts[0]
        assert isinstance(stmt, ast.VarDecl)
        assert stmt.type == ast.INT
        assert isinstance(stmt.label, JoinNode)
        assert isinstance(stmt.label.left, ConfPolicy)
        assert isinstance(stmt.label.right, IntegPolicy)

    def test_principal_parameterized_class(self):
        program = parse_program(
            "class Booking[principal Owner, principal Operator] authority(Owner) {\n"
            "    String{Owner->*} cardNumber;\n"
            "}"
        )
        cls = program.decls[0]
        assert cls.principal_params == ("Owner", "Operator")
        assert cls.authority == (Named("Owner"),)
        assert len(cls.fields) == 1
        assert cls.fields[0].label == ConfPolicy(Named("Owner"), (TOP,))

    def test_truncated_class_header(self):
        with pytest.raises(ParseError) as err:
            parse_program("class X [")
        assert "principal" in err.value.expected

    def test_method_header_clauses(self):
        program = parse_program(
            "class C {\n"
            "    String{A->B} six{A->*}(int{A->*} n) : {A->B} where authority(A) {\n"
            "        return \"x\";\n"
            "    }\n"
            "}"
        )
        m = program.decls[0].methods[0]
        assert m.begin_label == ConfPolicy(Named("A"), (TOP,))
        assert m.end_label == ConfPolicy(Named("A"), (Named("B"),))
        assert m.authority == (Named("A"),)
        assert m.params[0].label == ConfPolicy(Named("A"), (TOP,))

    def test_duplicate_principal_params_rejected(self):
        with pytest.raises(ParseError):
            parse_program("class C[principal P, principal P] { }")

    def test_assignment_target_must_be_lvalue(self):
        with pytest.raises(ParseError):
            parse_program("class C { void m{}() { 1 = 2; } }")

    def test_precedence(self):
        program = parse_program("class C { void m{}() { int x = 1 + 2 * 3; } }")
        init = program.decls[0].methods[0].body.stmts[0].init
        assert init.op == "+"
        assert init.right.op == "*"

    def test_new_with_principal_args(self):
        program = parse_program(
            "class C { void m{}() { Booking[Alice, Chuck] b = new Booking[Alice, Chuck](\"n\"); } }"
        )
        init = program.decls[0].methods[0].body.stmts[0].init
        assert isinstance(init, ast.New)
        assert init.principal_args == (Named("Alice"), Named("Chuck"))

    def test_actsfor_declaration(self):
        program = parse_program("principal A;\nprincipal B;\nactsfor A >= B;")
        decl = program.decls[2]
        assert decl.superior == Named("A")
        assert decl.inferior == Named("B")

    def test_declassify_expression(self):
        program = parse_program(
            "class C { void m{}() { String s = declassify(\"x\", {A->*} to {}); } }"
        )
        init = program.decls[0].methods[0].body.stmts[0].init
        assert isinstance(init, ast.Declassify)
        assert init.to_label == EMPTY

    def test_empty_program(self):
        assert parse_program("").decls == ()


class TestPretty:
    def test_empty_program(self):
        assert pretty_print(parse_program("")) == ""

    def test_join_label_text(self):
        program = parse_program("class C { String{Chuck->*; Alice->Chuck} f; }")
        rendered = pretty_print(program)
        assert "{Chuck->*; Alice->Chuck}" in rendered

    def test_expression_parens_only_when_needed(self):
        program = parse_program(
            "class C { void m{}() { int x = (1 + 2) * 3; int y = 1 + 2 * 3; } }"
        )
        stmts = program.decls[0].methods[0].body.stmts
        assert expr_to_text(stmts[0].init) == "(1 + 2) * 3"
        assert expr_to_text(stmts[1].init) == "1 + 2 * 3"

    def test_else_if_chain(self):
        src = (
            "class C {\n"
            "    void m{}() {\n"
            "        if (true) {\n"
            "            return;\n"
            "        } else if (false) {\n"
            "            return;\n"
            "        } else {\n"
            "            return;\n"
            "        }\n"
            "    }\n"
            "}\n"
        )
        program = parse_program(src)
        assert pretty_print(program) == src


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.name)
def test_corpus_round_trip(path):
    program = parse_program(path.read_text(), file=str(path))
    rendered = pretty_print(program)
    reparsed = parse_program(rendered, file=str(path))
    assert ast.ast_equal(program, reparsed)


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.name)
def test_corpus_span_nesting(path):
    program = parse_program(path.read_text(), file=str(path))

    def check(node, enclosing):
        span = getattr(node, "span", None)
        if span is not None:
            if enclosing is not None:
                assert enclosing.contains(span), f"{span} escapes {enclosing}"
            enclosing = span
        import dataclasses
        if dataclasses.is_dataclass(node) and not isinstance(node, type):
            for f in dataclasses.fields(node):
                check(getattr(node, f.name), enclosing)
        elif isinstance(node, tuple):
            for x in node:
                check(x, enclosing)

    check(program, None)


def test_parse_error_span_points_into_source():
    source = "class C {\n    void m{}() {\n        int x = ;\n    }\n}"
    with pytest.raises(ParseError) as err:
        parse_program(source)
    line, col = err.value.span.start
    lines = source.splitlines()
    assert 1 <= line <= len(lines)
    assert 1 <= col <= len(lines[line - 1]) + 1
