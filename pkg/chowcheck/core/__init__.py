# exact arithmetic and plane geometry:
#
# The modules in the core folder do no I/O. They provide the scalars,
# polynomial rings, projective geometry, invariants and linear algebra
# the case-level modules in lib are built on.
