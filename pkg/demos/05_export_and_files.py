"""Round-trip the file formats: polytope JSON, lattice JSON, OFF.

Rationals are serialized as "p/q" strings so nothing is ever rounded;
OFF is the one deliberately lossy format (viewers want floats), and it
carries the exact values in comments when the decimals are inexact.
"""

import json

from parallo.catalog import catalog
from parallo import serialize

prism = catalog("hexagonal-prism").polytope

doc = serialize.polytope_to_dict(prism)
text = serialize.dumps(doc)
print("JSON document (first lines):")
print("\n".join(text.splitlines()[:8]))

again = serialize.polytope_from_dict(json.loads(text))
print("round trip preserves vertices exactly:",
      again.vertices == prism.vertices)

print()
print("OFF export (vertices with non-decimal rationals get #exact):")
off = serialize.polytope_to_off(prism)
print("\n".join(off.splitlines()[:6]))

print()
lat = catalog("lattice-A2-gram").lattice
print("lattice document:", serialize.dumps(serialize.lattice_to_dict(lat)))
