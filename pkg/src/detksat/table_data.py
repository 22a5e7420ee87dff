"""Reference table of the 38 chain types the 3-SAT branching can emit.

Each row: (type id, type string, forced-termination flag, exact characteristic
value as "num/den", expected leading digits of the f-value).
"""

REFERENCE_CHAIN_TYPES: tuple[tuple[int, str, bool, str, str], ...] = (
    (1, "*", False, "3/7", "0.98586"),
    (2, "n*", False, "27/110", "0.984"),
    (3, "p*", False, "81/331", "0.983"),
    (4, "t*", False, "15/46", "0.984"),
    (5, "nn*", False, "9/64", "0.984"),
    (6, "np*", False, "81/578", "0.983"),
    (7, "nt*", False, "45/241", "0.984"),
    (8, "pp*", True, "243/1739", "0.98580"),
    (9, "pt*", False, "27/145", "0.983"),
    (10, "nnn*", False, "243/3016", "0.984"),
    (11, "nnp*", False, "729/9080", "0.983"),
    (12, "nnt*", False, "135/1262", "0.984"),
    (13, "npn*", False, "243/3028", "0.983"),
    (14, "npp*", True, "729/9110", "0.9853"),
    (15, "npt*", False, "45/422", "0.983"),
    (16, "ntn*", False, "405/3788", "0.984"),
    (17, "pnp*", True, "2187/27334", "0.9853"),
    (18, "pnt*", False, "405/3799", "0.983"),
    (19, "tnt*", False, "25/176", "0.984"),
    (20, "nnnn*", True, "243/5264", "0.98583"),
    (21, "nnnp*", True, "729/15848", "0.9854"),
    (22, "nnnt*", False, "405/6608", "0.984"),
    (23, "nnpn*", True, "729/15856", "0.9855"),
    (24, "nnpp*", True, "2187/47704", "0.984"),
    (25, "nnpt*", True, "1215/19888", "0.9854"),
    (26, "npnp*", True, "2187/47732", "0.9850"),
    (27, "npnt*", True, "405/6634", "0.9856"),
    (28, "ntnn*", False, "135/2204", "0.984"),
    (29, "ntnp*", True, "1215/19904", "0.9856"),
    (30, "ntnt*", False, "675/8299", "0.984"),
    (31, "pnnp*", True, "729/15904", "0.9850"),
    (32, "pnnt*", True, "1215/19894", "0.9855"),
    (33, "tnnt*", False, "45/553", "0.984"),
    (34, "tnpp*", True, "405/6653", "0.9850"),
    (35, "tnpt*", True, "675/8321", "0.9855"),
    (36, "tnnnn*", True, "243/6920", "0.9855"),
    (37, "tnnnp*", True, "3645/104168", "0.9852"),
    (38, "tnnnt*", True, "225/4826", "0.9856"),
)
