# chowcheck library:
#
# The modules in the lib folder work on whole cases: reading the case
# files, the cotangent check, the degeneracy facts, the randomized
# oracles, the homology trials and the rendering of reports.
