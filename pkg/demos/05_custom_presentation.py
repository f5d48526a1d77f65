"""
Running the Groebner engine on other algebras
=============================================

"""

import json
import tempfile
from pathlib import Path

from fkalg import hilbert_coefficients, truncated_groebner
from fkalg.presentations import load_presentation

# a quantum plane  ba = 2 ab  and a free generator c commuting with a
doc = {
    "version": 1,
    "generators": ["a", "b", "c"],
    "degrees": [1, 1, 1],
    "relations": [
        [{"coeff": "1", "word": ["b", "a"]}, {"coeff": "-2", "word": ["a", "b"]}],
        [{"coeff": "1", "word": ["c", "a"]}, {"coeff": "-1", "word": ["a", "c"]}],
    ],
}
path = Path(tempfile.mkdtemp()) / "plane.json"
path.write_text(json.dumps(doc))

p = load_presentation(path)
gb = truncated_groebner(p, max_degree=6)
for g in gb.elements:
    print(g)
print(hilbert_coefficients(gb).coefficients)

# the same file works from the command line:
#   fkalg dims --presentation plane.json --max-degree 6
