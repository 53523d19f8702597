/// Published greedy harmony search objectives per hop limit.
pub const REFERENCE_OBJECTIVES: &[(usize, &[(&str, f64)])] = &[
    (
        3,
        &[
            ("C5mp1", 3188.66),
            ("C5mq1", 4904.25),
            ("C10mp1", 3032.99),
            ("C10mq1", 4512.20),
            ("C15mp1", 2814.03),
            ("C15mq1", 4505.18),
            ("C20mp1", 2762.97),
            ("C20mq1", 4413.11),
            ("D5mp1", 3221.18),
            ("D5mq1", 4548.37),
            ("D10mp1", 3126.22),
            ("D10mq1", 4441.01),
            ("D15mp1", 2896.70),
            ("D15mq1", 4234.28),
            ("D20mp1", 2761.97),
            ("D20mq1", 4180.58),
            ("C5mp2", 3321.18),
            ("C5mq2", 4548.37),
            ("C10mp2", 3126.22),
            ("C10mq2", 4441.01),
            ("C15mp2", 2896.70),
            ("C15mq2", 4221.58),
            ("C20mp2", 2761.97),
            ("C20mq2", 4180.58),
            ("D5mp2", 3386.00),
            ("D5mq2", 4813.21),
            ("D10mp2", 3290.83),
            ("D10mq2", 4610.94),
            ("D15mp2", 3196.55),
            ("D15mq2", 4289.06),
            ("D20mp2", 3143.35),
            ("D20mq2", 4188.58),
        ],
    ),
    (
        5,
        &[
            ("C5mp1", 3130.49),
            ("C5mq1", 4753.89),
            ("C10mp1", 2796.08),
            ("C10mq1", 4463.03),
            ("C15mp1", 2778.08),
            ("C15mq1", 4435.11),
            ("C20mp1", 2757.97),
            ("C20mq1", 4412.11),
            ("D5mp1", 3087.59),
            ("D5mq1", 4548.37),
            ("D10mp1", 2893.08),
            ("D10mq1", 4583.59),
            ("D15mp1", 2780.97),
            ("D15mq1", 4234.28),
            ("D20mp1", 2760.97),
            ("D20mq1", 4180.58),
            ("C5mp2", 3287.12),
            ("C5mq2", 4439.18),
            ("C10mp2", 3126.22),
            ("C10mq2", 4266.58),
            ("C15mp2", 2896.70),
            ("C15mq2", 4198.58),
            ("C20mp2", 2761.97),
            ("C20mq2", 4180.58),
            ("D5mp2", 3305.53),
            ("D5mq2", 4326.96),
            ("D10mp2", 3209.20),
            ("D10mq2", 4279.47),
            ("D15mp2", 3154.35),
            ("D15mq2", 4212.58),
            ("D20mp2", 3142.35),
            ("D20mq2", 4184.58),
        ],
    ),
    (
        7,
        &[
            ("C5mp1", 2870.89),
            ("C5mq1", 4543.16),
            ("C10mp1", 2791.08),
            ("C10mq1", 4452.11),
            ("C15mp1", 2775.97),
            ("C15mq1", 4424.11),
            ("C20mp1", 2757.97),
            ("C20mq1", 4412.11),
            ("D5mp1", 2894.74),
            ("D5mq1", 4514.03),
            ("D10mp1", 2815.08),
            ("D10mq1", 4441.01),
            ("D15mp1", 2775.97),
            ("D15mq1", 4234.28),
            ("D20mp1", 2759.97),
            ("D20mq1", 4180.58),
            ("C5mp2", 3223.64),
            ("C5mq2", 4354.77),
            ("C10mp2", 3126.22),
            ("C10mq2", 4249.58),
            ("C15mp2", 2896.70),
            ("C15mq2", 4196.58),
            ("C20mp2", 2761.97),
            ("C20mq2", 4180.58),
            ("D5mp2", 3228.64),
            ("D5mq2", 4326.58),
            ("D10mp2", 3181.64),
            ("D10mq2", 4236.58),
            ("D15mp2", 3153.35),
            ("D15mq2", 4207.58),
            ("D20mp2", 3142.35),
            ("D20mq2", 4184.58),
        ],
    ),
    (
        10,
        &[
            ("C5mp1", 2856.97),
            ("C5mq1", 4470.34),
            ("C10mp1", 2791.08),
            ("C10mq1", 4452.11),
            ("C15mp1", 2772.08),
            ("C15mq1", 4424.11),
            ("C20mp1", 2757.97),
            ("C20mq1", 4412.11),
            ("D5mp1", 2846.08),
            ("D5mq1", 4514.03),
            ("D10mp1", 2810.08),
            ("D10mq1", 4441.01),
            ("D15mp1", 2759.97),
            ("D15mq1", 4234.28),
            ("D20mp1", 2759.97),
            ("D20mq1", 4180.58),
            ("C5mp2", 3172.64),
            ("C5mq2", 4280.58),
            ("C10mp2", 3126.22),
            ("C10mq2", 4227.58),
            ("C15mp2", 2896.70),
            ("C15mq2", 4196.58),
            ("C20mp2", 2761.97),
            ("C20mq2", 4180.58),
            ("D5mp2", 3211.64),
            ("D5mq2", 4271.58),
            ("D10mp2", 3181.64),
            ("D10mq2", 4236.58),
            ("D15mp2", 3153.35),
            ("D15mq2", 4202.58),
            ("D20mp2", 3142.35),
            ("D20mq2", 4184.58),
        ],
    ),
];
