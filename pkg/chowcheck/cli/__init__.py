# the chowcheck console script (setup.py:entry_points)
#
# Argument parsing lives here only; core and lib never read sys.argv.
