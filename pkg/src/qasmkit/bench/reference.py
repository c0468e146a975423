"""Published reference values for the desk-scale benchmark rows.

``TABLE1[name] = (qubits, original gates, original depth, qiskit gates,
reference gates, reference depth)``; ``TABLE2[name] = (qubits, original cx, qiskit cx,
reference cx, reference cx with layout optimization)``.
"""

TABLE1 = {
    "mod5_4": (5, 79, 59, 60, 53, 37),
    "vbe_adder_3": (10, 190, 63, 134, 105, 38),
    "mod_mult_55": (9, 147, 37, 117, 109, 29),
    "hwb_6": (7, 319, 93, 248, 232, 68),
    "gf2^4_mult": (12, 289, 54, 213, 203, 37),
    "tof_3": (5, 57, 34, 44, 40, 26),
    "barenco_tof_3": (5, 76, 40, 56, 50, 32),
    "tof_4": (7, 95, 40, 73, 72, 28),
    "barenco_tof_4": (7, 146, 64, 109, 98, 44),
    "tof_5": (9, 133, 40, 101, 90, 28),
    "barenco_tof_5": (9, 218, 76, 162, 146, 54),
}

TABLE2 = {
    "mod5_4": (5, 28, 58, 43, 40),
    "vbe_adder_3": (10, 70, 134, 78, 68),
    "mod_mult_55": (9, 48, 123, 142, 109),
    "hwb_6": (7, 116, 237, 259, 259),
    "gf2^4_mult": (12, 99, 284, 422, 337),
    "tof_3": (5, 18, 18, 32, 30),
    "barenco_tof_3": (5, 24, 24, 35, 35),
    "tof_4": (7, 30, 43, 61, 47),
    "barenco_tof_4": (7, 48, 48, 73, 58),
    "tof_5": (9, 42, 86, 101, 70),
    "barenco_tof_5": (9, 72, 126, 150, 102),
}

# Rows whose source circuits are not vendored (see corpus/MANIFEST).
UNAVAILABLE = ("mod5_4", "mod_mult_55", "hwb_6", "gf2^4_mult")
