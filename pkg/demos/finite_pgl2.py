"""Orders, PSL index and simplicity of PGL_2 over the fields with at most 9 elements."""

from cremona.finite import SUPPORTED_ORDERS, is_simple, pgl2_enumerate

print(" q  |PGL2|  |PSL2|  simple")
for q in SUPPORTED_ORDERS:
    G = pgl2_enumerate(q)
    print(f"{q:2d}  {G.order:6d}  {len(G.psl):6d}  {is_simple(G)}")
