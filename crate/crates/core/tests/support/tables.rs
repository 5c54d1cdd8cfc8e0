//! Published comparison tables, `(t, delta, delta_tilde, error_pct)` for t = 1..=40.

pub const FIBONACCI: [(u64, f64, f64, f64); 40] = [
    (1, 0.373956, 0.374149, 0.052),
    (2, 0.285387, 0.285535, 0.052),
    (3, 0.066481, 0.066427, 0.081),
    (4, 0.066426, 0.066530, 0.156),
    (5, 0.018895, 0.018834, 0.321),
    (6, 0.050736, 0.050770, 0.068),
    (7, 0.008935, 0.008883, 0.579),
    (8, 0.016607, 0.016649, 0.255),
    (9, 0.007387, 0.007456, 0.937),
    (10, 0.009447, 0.009511, 0.674),
    (11, 0.003402, 0.003362, 1.188),
    (12, 0.011809, 0.011720, 0.755),
    (13, 0.002398, 0.002453, 2.279),
    (14, 0.006819, 0.006839, 0.299),
    (15, 0.003359, 0.003316, 1.281),
    (16, 0.004152, 0.004080, 1.726),
    (17, 0.001375, 0.001390, 1.081),
    (18, 0.005637, 0.005641, 0.066),
    (19, 0.001094, 0.001096, 0.219),
    (20, 0.007085, 0.007095, 0.134),
    (21, 0.001588, 0.001621, 2.053),
    (22, 0.002597, 0.002563, 1.294),
    (23, 0.000739, 0.000742, 0.391),
    (24, 0.002952, 0.002955, 0.092),
    (25, 0.000756, 0.000752, 0.501),
    (26, 0.001830, 0.001795, 1.929),
    (27, 0.000821, 0.000879, 7.097),
    (28, 0.001587, 0.001497, 5.676),
    (29, 0.000461, 0.000461, 0.096),
    (30, 0.001680, 0.001678, 0.091),
    (31, 0.000402, 0.000412, 2.458),
    (32, 0.001038, 0.001012, 2.497),
    (33, 0.000605, 0.000597, 1.302),
    (34, 0.001049, 0.001028, 2.044),
    (35, 0.000451, 0.000486, 7.656),
    (36, 0.001312, 0.001310, 0.162),
    (37, 0.000281, 0.000260, 7.392),
    (38, 0.000835, 0.000876, 4.961),
    (39, 0.000426, 0.000458, 7.418),
    (40, 0.001771, 0.001766, 0.303),
];

pub const SEQ_4_M1: [(u64, f64, f64, f64); 40] = [
    (1, 0.000000, 0.000000, 0.000),
    (2, 0.560934, 0.561025, 0.016),
    (3, 0.000000, 0.000000, 0.000),
    (4, 0.149582, 0.149481, 0.068),
    (5, 0.000000, 0.000000, 0.000),
    (6, 0.099722, 0.099698, 0.024),
    (7, 0.000000, 0.000000, 0.000),
    (8, 0.028047, 0.028217, 0.607),
    (9, 0.000000, 0.000000, 0.000),
    (10, 0.028342, 0.028577, 0.829),
    (11, 0.000000, 0.000000, 0.000),
    (12, 0.016620, 0.016633, 0.077),
    (13, 0.000000, 0.000000, 0.000),
    (14, 0.013402, 0.013374, 0.210),
    (15, 0.000000, 0.000000, 0.000),
    (16, 0.007012, 0.007062, 0.718),
    (17, 0.000000, 0.000000, 0.000),
    (18, 0.011080, 0.011106, 0.233),
    (19, 0.000000, 0.000000, 0.000),
    (20, 0.007558, 0.007560, 0.029),
    (21, 0.000000, 0.000000, 0.000),
    (22, 0.005104, 0.005157, 1.045),
    (23, 0.000000, 0.000000, 0.000),
    (24, 0.012465, 0.012304, 1.293),
    (25, 0.000000, 0.000000, 0.000),
    (26, 0.003598, 0.003597, 0.014),
    (27, 0.000000, 0.000000, 0.000),
    (28, 0.003574, 0.003516, 1.620),
    (29, 0.000000, 0.000000, 0.000),
    (30, 0.005039, 0.005052, 0.267),
    (31, 0.000000, 0.000000, 0.000),
    (32, 0.001753, 0.001770, 0.974),
    (33, 0.000000, 0.000000, 0.000),
    (34, 0.002063, 0.002128, 3.166),
    (35, 0.000000, 0.000000, 0.000),
    (36, 0.001847, 0.001930, 4.511),
    (37, 0.000000, 0.000000, 0.000),
    (38, 0.001640, 0.001595, 2.768),
    (39, 0.000000, 0.000000, 0.000),
    (40, 0.001417, 0.001418, 0.064),
];

pub const SEQ_10_2: [(u64, f64, f64, f64); 40] = [
    (1, 0.224373, 0.224381, 0.003),
    (2, 0.168280, 0.168315, 0.021),
    (3, 0.199443, 0.199323, 0.060),
    (4, 0.056093, 0.056196, 0.183),
    (5, 0.011337, 0.011407, 0.620),
    (6, 0.149582, 0.149463, 0.080),
    (7, 0.005361, 0.005354, 0.128),
    (8, 0.000000, 0.000000, 0.000),
    (9, 0.022160, 0.022184, 0.107),
    (10, 0.008503, 0.008521, 0.217),
    (11, 0.002041, 0.002023, 0.904),
    (12, 0.024930, 0.024918, 0.050),
    (13, 0.001439, 0.001428, 0.765),
    (14, 0.004021, 0.003973, 1.185),
    (15, 0.010077, 0.010214, 1.358),
    (16, 0.000000, 0.000000, 0.000),
    (17, 0.000825, 0.000860, 4.232),
    (18, 0.016620, 0.016679, 0.353),
    (19, 0.000656, 0.000627, 4.445),
    (20, 0.002834, 0.002852, 0.628),
    (21, 0.004765, 0.004761, 0.088),
    (22, 0.001531, 0.001548, 1.104),
    (23, 0.000443, 0.000446, 0.572),
    (24, 0.018698, 0.018774, 0.408),
    (25, 0.000453, 0.000455, 0.337),
    (26, 0.001079, 0.001082, 0.254),
    (27, 0.002462, 0.002485, 0.924),
    (28, 0.001340, 0.001352, 0.880),
    (29, 0.000276, 0.000290, 4.946),
    (30, 0.007558, 0.007623, 0.862),
    (31, 0.000241, 0.000230, 4.671),
    (32, 0.000000, 0.000000, 0.000),
    (33, 0.001815, 0.001792, 1.247),
    (34, 0.000619, 0.000663, 7.141),
    (35, 0.000271, 0.000285, 5.219),
    (36, 0.002770, 0.002769, 0.038),
    (37, 0.000168, 0.000180, 6.855),
    (38, 0.000492, 0.000478, 2.870),
    (39, 0.001279, 0.001292, 1.007),
    (40, 0.000000, 0.000000, 0.000),
];
