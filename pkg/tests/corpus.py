"""Small presentations for the exhaustive finite-field checks.

Each entry is (name, presentation body, masts).  Bodies omit the field line
so the same algebra can be read over several prime fields.  All quivers have
at most 3 vertices and 5 arrows, relations have length at most 4 and masts
have length at most 4.
"""

from uniserial.dsl import parse_path, parse_presentation

CORPUS = [
    ("loop-two-exits", """
        quiver { vertex 1 2; arrow a : 1 -> 1; arrow b : 1 -> 2; arrow c : 1 -> 2 }
        relations { a^3; c*a - b*a }
     """, ["b*a", "c*a", "b*a^2"]),
    ("three-parallel", """
        quiver { vertex 1 2; arrow a : 1 -> 2; arrow b : 1 -> 2; arrow c : 1 -> 2 }
        relations { }
     """, ["a", "c"]),
    ("loop-and-exit", """
        quiver { vertex 1 2; arrow a : 1 -> 1; arrow b : 1 -> 2 }
        relations { a^2 }
     """, ["b*a", "a", "a^2", "b"]),
    ("two-cycle", """
        quiver { vertex 1 2; arrow a : 1 -> 1; arrow b : 1 -> 2; arrow c : 2 -> 1 }
        relations { a^2; c*b*c; c*b*a*c }
     """, ["c*b*a", "b*c*b", "a*c*b", "c*b", "a*c*b*a", "b*a*c*b"]),
    ("commuting-loops", """
        quiver { vertex 1; arrow x : 1 -> 1; arrow y : 1 -> 1 }
        relations { x*y - y*x; x^2; y^2 }
     """, ["y*x", "x"]),
    ("free-loops", """
        quiver { vertex 1; arrow x : 1 -> 1; arrow y : 1 -> 1 }
        relations { x^2; y^2; y*x*y; x*y*x }
     """, ["y*x", "x*y*x", "x"]),
    ("kronecker-tail", """
        quiver { vertex 1 2 3; arrow a : 1 -> 2; arrow b : 1 -> 2; arrow c : 2 -> 3; arrow d : 2 -> 3 }
        relations { c*a - d*b }
     """, ["c*a", "d*a", "c*b", "d*b"]),
    ("triangle", """
        quiver { vertex 1 2 3; arrow a : 1 -> 2; arrow b : 2 -> 3; arrow c : 1 -> 3;
                 arrow d : 3 -> 1 }
        relations { a*d*b*a; d*c - d*b*a; b*a*d*c }
     """, ["b*a", "d*b*a", "a*d*c"]),
    ("return-loop", """
        quiver { vertex 1 2; arrow a : 1 -> 2; arrow b : 2 -> 1; arrow e : 2 -> 2 }
        relations { b*e*a - b*a*b*a; e^2; a*b*e - e*a*b }
     """, ["b*a", "e*a", "b*e*a", "a*b*a"]),
    ("free-cycle", """
        quiver { vertex 1 2 3; arrow a : 1 -> 2; arrow b : 2 -> 3; arrow c : 3 -> 1;
                 arrow d : 1 -> 3 }
        relations { a*c*b*a; d*c*d; c*b*a - c*d }
     """, ["c*b*a", "a*c*b*a", "b*a", "a*c*d"]),
]


def load(body: str, field: str):
    return parse_presentation(f"field {field}\n{body}")


def cases(field: str):
    """Yield (name, presentation, mast) over the given field text."""
    for name, body, masts in CORPUS:
        pres = load(body, field)
        for m in masts:
            yield name, pres, parse_path(m, pres.quiver)
