//! Frozen classical curvature of the fixture models.

/// Ricci, scalar and Einstein of the fixture models, computed by a separate
/// computer-algebra run with the same index conventions.
pub const CLASSICAL: &[(&str, &[&str], &str, &[&str])] = &[
    ("flat2d", &["0", "0", "0", "0"], "0", &["0", "0", "0", "0"]),
    ("polar2d", &["0", "0", "0", "0"], "0", &["0", "0", "0", "0"]),
    ("polar3d", &["0"; 9], "0", &["0"; 9]),
    ("hyperbolic2d", &["-1/t^2", "0", "0", "-1/t^2"], "-2", &["0", "0", "0", "0"]),
    (
        "curved3d",
        &[
            "-(x^2 + 1)*(-3*t^2*x + t^2 + 2*x^3 - 2*x^2 + 6*x - 2)/(2*x*(-t^2 + 2*x^2 + 2)^2)",
            "-t*(-3*t^2 + 2*x^2 + 6)/(2*(-t^2 + 2*x^2 + 2)^2)",
            "0",
            "-t*(-3*t^2 + 2*x^2 + 6)/(2*(-t^2 + 2*x^2 + 2)^2)",
            "(t^2 + 2*x^2 - 2)^2/(4*x^2*(-t^2 + 2*x^2 + 2)^2)",
            "0",
            "0",
            "0",
            "-a*(-3*t^2*x^2 + t^2 + 2*x^4 - 4*x^3 - 4*x - 2)/(4*x*(-t^2 + 2*x^2 + 2)^2)",
        ],
        "-(-7*t^2*x^2 + t^2 + 2*x^4 - 4*x^3 + 8*x^2 - 4*x - 2)/(2*x^2*(-t^2 + 2*x^2 + 2)^2)",
        &[
            "-(x^2 + 1)*(t^2*x^2 + 2*t^2*x - t^2 + 2*x^4 + 4*x^2 + 2)/(4*x^2*(-t^2 + 2*x^2 + 2)^2)",
            "-t*(x + 1)*(t^2*x - t^2 + 2*x^3 + 2*x^2 + 2*x + 2)/(4*x^2*(-t^2 + 2*x^2 + 2)^2)",
            "0",
            "-t*(x + 1)*(t^2*x - t^2 + 2*x^3 + 2*x^2 + 2*x + 2)/(4*x^2*(-t^2 + 2*x^2 + 2)^2)",
            "(t^4 - 10*t^2*x^2 - 2*t^2 + 8*x^4 - 8*x^3 + 8*x^2 - 8*x)/(4*x^2*(-t^2 + 2*x^2 + 2)^2)",
            "0",
            "0",
            "0",
            "-a*x*(t^2 - 2)/(-t^2 + 2*x^2 + 2)^2",
        ],
    ),
];
