//! Stored values for the two worked examples.

pub struct Example {
    pub name: &'static str,
    /// `a, b0, b1, b2, b3`.
    pub params: [i64; 5],
    pub d: u32,
    /// Restrict to the line `e1 = 0`, `e2 = -e3`.
    pub on_line: bool,
    pub d0: Option<&'static str>,
    /// `c_0, c_1, ...`.
    pub c: &'static [&'static str],
}

pub const EXAMPLES: [Example; 2] = [
    Example {
        name: "example_i",
        params: [2, 1, -1, -3, 0],
        d: 1,
        on_line: false,
        d0: None,
        c: &["44*e2^2 - 500*e2*e3 + 380*e3^2", "40*e2 - 80*e3", "3/2"],
    },
    Example {
        name: "example_ii",
        params: [-7, 3, -1, 2, 1],
        d: 2,
        on_line: true,
        d0: Some("-8464*e3^2"),
        c: &[
            "-11061824*e3^4",
            "-2279680/3*e3^3",
            "-1484*e3^2",
            "1040/3*e3",
            "5/2",
        ],
    },
];
