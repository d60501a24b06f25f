from collections import OrderedDict

# transfer_log_fields  discharge --log transfers.tsv
transfer_log_fields = OrderedDict([
    ('phase', 'phase number in the variant schedule, starting at 1'),
    ('rule', 'rule tag, e.g. R1 or R4a.iii'),
    ('source', 'element giving charge (vN vertex, fN face)'),
    ('sink', 'element receiving charge'),
    ('amount', 'exact non-negative fraction p/q'),
])

# rule_fields  tags written to the transfer log
rule_fields = OrderedDict([
    ('R1', '3-face gets 1/3 from each adjacent 5+-face; 5+-face gets 1/5 from each incident 5+-vertex'),
    ('R2', '10+-face gets 1/6 from each special semi-rich 4+-vertex, gives 1/3 to each rich 4-vertex on a 3-face'),
    ('R3', 'a face good to a 10-face gives it 1/6'),
    ('R4a.i', '10+-face gives 1/3 to a 5-face sharing a (3,3)- or (3,4+)-edge with a 3-face'),
    ('R4a.ii', '5-face gives 1 to each incident triangular 3-vertex'),
    ('R4a.iii', '5-face spreads its remaining charge over adjacent 10-faces'),
    ('R4a.iv', '3-vertex takes its remaining need evenly from incident 6+-faces'),
    ('R4b.i', '3-vertex gets 1 evenly from incident 5+-faces'),
    ('R4b.ii', '5-face gets 1/6 from each adjacent 7+-face'),
    ('R4b.iii', 'bad 5-face gets 1/12 from each adjacent 5-face'),
    ('R4b.iv', '5-face spreads its surplus over adjacent 5-faces in one synchronous pass'),
])

# phase_fields  rule tags per phase, in schedule order
phase_fields = OrderedDict([
    ('a', ('R1', 'R2', 'R4a.i', 'R4a.ii', 'R4a.iii', 'R4a.iv', 'R3')),
    ('b', ('R1', 'R2', 'R4b.i', 'R4b.ii', 'R4b.iii', 'R4b.iv', 'R3')),
])

# pattern_vertex_fields  one entry of "vertices" in a pattern file
pattern_vertex_fields = OrderedDict([
    ('hostDegree', 'exact degree the vertex must have in the host graph'),
    ('outsideNeighbors', 'number of host neighbors outside the pattern'),
])

# lemma2_reason_fields  reason codes of the near-degenerate extension check
lemma2_reason_fields = OrderedDict([
    ('SHORT_ORDER', 'fewer than two vertices, the extension lemma needs v1 != vl'),
    ('SMALL_K', 'k < 3'),
    ('NO_CLOSING_EDGE', 'v1 vl is not an edge of the host'),
    ('COND1_SIZE', '|A(v1)| > |A(vl)| is not guaranteed / does not hold'),
    ('COND1_EMPTY', '|A(vl)| >= 1 is not guaranteed / does not hold'),
    ('COND2_DEGREE', 'd(vl) > k'),
    ('COND2_NO_OUTSIDE', 'vl has no neighbor outside H'),
    ('COND3', 'an interior vertex has k or more constraining neighbors'),
    ('MIN_DEGREE', 'single-vertex configuration whose vertex has degree k or more'),
])

# verify_table_fields  verify-theorem2 summary columns
verify_table_fields = OrderedDict([
    ('variant', 'forbidden-cycle variant'),
    ('seen', 'graphs read from the stream'),
    ('filtered', 'graphs dropped: too large, disconnected, non-planar or containing a forbidden cycle'),
    ('passed', 'DP-3-colorable'),
    ('failed', 'certificate found (refutation candidate)'),
    ('budget', 'budget exceeded'),
])
