# Reference implementations used to derive expected values for the test
# suite. Nothing in here may import from the phindex package: the point is
# that these results are obtained by a different mechanism than the code
# under test.
