//! Verbatim copies of the published 16-point tables. Never recomputed.

/// Forward 16-point number-theoretic DHT matrix, modulus 16.
pub const FORWARD16: [[u8; 16]; 16] = [
    [1, 0, 11, 0, 13, 0, 7, 0, 9, 0, 3, 0, 5, 0, 15, 0],
    [0, 1, 0, 11, 0, 13, 0, 7, 0, 9, 0, 3, 0, 5, 0, 15],
    [5, 0, 1, 0, 11, 0, 13, 0, 7, 0, 9, 0, 3, 0, 5, 0],
    [0, 5, 0, 1, 0, 11, 0, 13, 0, 7, 0, 9, 0, 3, 0, 5],
    [3, 0, 5, 0, 1, 0, 11, 0, 13, 0, 7, 0, 9, 0, 3, 0],
    [0, 3, 0, 5, 0, 1, 0, 11, 0, 13, 0, 7, 0, 9, 0, 3],
    [9, 0, 3, 0, 5, 0, 1, 0, 11, 0, 13, 0, 7, 0, 9, 0],
    [0, 9, 0, 3, 0, 5, 0, 1, 0, 11, 0, 13, 0, 7, 0, 9],
    [7, 0, 9, 0, 3, 0, 5, 0, 1, 0, 11, 0, 13, 0, 7, 0],
    [0, 7, 0, 9, 0, 3, 0, 5, 0, 1, 0, 11, 0, 13, 0, 7],
    [13, 0, 7, 0, 9, 0, 3, 0, 5, 0, 1, 0, 11, 0, 13, 0],
    [0, 13, 0, 7, 0, 9, 0, 3, 0, 5, 0, 1, 0, 11, 0, 13],
    [11, 0, 13, 0, 7, 0, 9, 0, 3, 0, 5, 0, 1, 0, 11, 0],
    [0, 11, 0, 13, 0, 7, 0, 9, 0, 3, 0, 5, 0, 1, 0, 11],
    [1, 0, 11, 0, 13, 0, 7, 0, 9, 0, 3, 0, 5, 0, 1, 0],
    [0, 1, 0, 11, 0, 13, 0, 7, 0, 9, 0, 3, 0, 5, 0, 1],
];

/// The inverse table as printed, three decimals per entry. The last two
/// lines carry 17 tokens and are treated as errata.
pub const INVERSE16_PRINTED: [&str; 16] = [
    "-0.071 0.000 0.004 0.000 -0.002 0.000 0.018 0.000 -0.031 0.000 0.049 0.000 0.042 0.000 0.012 0.000",
    "0.000 -0.071 0.000 0.004 0.000 -0.002 0.000 0.018 0.000 -0.031 0.000 0.049 0.000 0.042 0.000 0.012",
    "0.000 0.000 -0.060 0.000 0.004 0.000 -0.002 0.000 0.018 0.000 -0.031 0.000 0.049 0.000 0.042 0.000",
    "0.000 0.000 0.000 -0.060 0.000 0.004 0.000 -0.002 0.000 0.018 0.000 -0.031 0.000 0.049 0.000 0.042",
    "0.000 0.000 0.042 0.000 -0.060 0.000 0.004 0.000 -0.002 0.000 0.018 0.000 -0.031 0.000 0.049 0.000",
    "0.000 0.000 0.000 0.042 0.000 -0.060 0.000 0.004 0.000 -0.002 0.000 0.018 0.000 -0.031 0.000 0.049",
    "0.000 0.000 0.049 0.000 0.042 0.000 -0.060 0.000 0.004 0.000 -0.002 0.000 0.018 0.000 -0.031 0.000",
    "0.000 0.000 0.000 0.049 0.000 0.042 0.000 -0.060 0.000 0.004 0.000 -0.002 0.000 0.018 0.000 -0.031",
    "0.000 0.000 -0.031 0.000 0.049 0.000 0.042 0.000 -0.060 0.000 0.004 0.000 -0.002 0.000 0.018 0.000",
    "0.000 0.000 0.000 -0.031 0.000 0.049 0.000 0.042 0.000 -0.060 0.000 0.004 0.000 -0.002 0.000 0.018",
    "0.000 0.000 0.018 0.000 -0.031 0.000 0.049 0.000 0.042 0.000 -0.060 0.000 0.004 0.000 -0.002 0.000",
    "0.000 0.000 0.000 0.018 0.000 -0.031 0.000 0.049 0.000 0.042 0.000 -0.060 0.000 0.004 0.000 -0.002",
    "0.000 0.000 -0.002 0.000 0.018 0.000 -0.031 0.000 0.049 0.000 0.042 0.000 -0.060 0.000 0.004 0.000",
    "0.000 0.000 0.000 -0.002 0.000 0.018 0.000 -0.031 0.000 0.049 0.000 0.042 0.000 -0.060 0.000 0.004",
    "0.071 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 -0.071 0.000",
    "0.000 0.071 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 0.000 -0.071",
];
