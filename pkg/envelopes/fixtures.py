"""
Worked examples as canonical text, shared by the test suites.

Polynomial lists hold one expression per line; word lists one word per
line, with 1 for the empty word.
"""

from typing import List, Sequence

from poly import Polynomial
from presentation_file import parse_polynomial
from words import Alphabet, Word


def polys(text: str, letters: Sequence[str]) -> List[Polynomial]:
    alphabet = Alphabet.of(letters)
    return [parse_polynomial(line, alphabet) for line in text.strip().splitlines()]


def words(text: str, letters: Sequence[str]) -> List[Word]:
    alphabet = Alphabet.of(letters)
    return [() if line.strip() == "1" else parse_polynomial(line, alphabet).lm
            for line in text.strip().splitlines()]


# Symmetric 2x2 matrices under x∘y = xy + yx
S2_GENERATORS = """
a^2 - a
ba + ab
b^2 - b
ca + ac - c
cb + bc - c
c^2 - b - a
"""

# reduced basis: cb + bc - c becomes cb - ac once bc is reduced by bc + ac - c
S2_BASIS = """
a^2 - a
ab
ba
b^2 - b
bc + ac - c
ca + ac - c
cb - ac
c^2 - b - a
"""

S2_BASIS_AS_LISTED = """
a^2 - a
ab
ba
b^2 - b
bc + ac - c
ca + ac - c
cb + bc - c
c^2 - b - a
"""

S2_NORMAL_WORDS = """
1
a
b
c
ac
"""

# M2(F) under the Jordan product
M2_JORDAN_GENERATORS = """
a^2 - a
ba + ab - b
b^2
ca + ac - c
cb + bc - d - a
c^2
da + ad
db + bd - b
dc + cd - c
d^2 - d
"""

M2_JORDAN_BASIS = """
a^2 - a
ad
ba + ab - b
b^2
bd - ab
ca + ac - c
cb + bc - d - a
c^2
cd - ac
da
db + ab - b
dc + ac - c
d^2 - d
"""

M2_JORDAN_NORMAL_WORDS = """
1
a
b
c
d
ab
ac
bc
abc
"""

# u_i is i; "." is zero
M2_JORDAN_TABLE = """
1 2 3 4 5 6 7 8 9
2 2 6 7 . 6 7 9 9
3 3-6 . 8 6 . 8-9 . .
4 4-7 2+5-8 . 7 5-8+9 . 4 4-7
5 . 3-6 4-7 5 . . 8-9 .
6 . . 9 6 . . . .
7 . 2-9 . 7 . . 7 .
8 9 3 . 8-9 6 . 8 9
9 9 6 . . 6 . 9 9
"""

# M2(F) under the Jordan triple product xyz + zyx
M2_TRIPLE_GENERATORS = """
a^3 - a
aba
aca
ada
ba^2 + a^2b - b
bab
b^2a + ab^2
b^3
bca + acb - a
bcb - b
bda + adb
bdb
ca^2 + a^2c - c
cab + bac - d
cac
cba + abc - a
cb^2 + b^2c
cbc - c
c^2a + ac^2
c^2b + bc^2
c^3
cda + adc
cdb + bdc - a
cdc
da^2 + a^2d
dab + bad
dac + cad
dad
dba + abd - b
db^2 + b^2d
dbc + cbd - d
dbd
dca + acd - c
dcb + bcd - d
dc^2 + c^2d
dcd
d^2a + ad^2
d^2b + bd^2 - b
d^2c + cd^2 - c
d^3 - d
"""

M2_TRIPLE_BASIS = """
ad
b^2
bd - ab
c^2
cd - ac
da
db - ba
dc - ca
d^2 - cb - bc + a^2
a^3 - a
aba
aca
acb + abc - a
ba^2 + a^2b - b
bab
bca - abc
bcb - b
ca^2 + a^2c - c
cab + bac - d
cac
cba + abc - a
cbc - c
"""

M2_TRIPLE_NORMAL_WORDS = """
1
a
b
c
d
a^2
ab
ac
ba
bc
ca
cb
a^2b
a^2c
abc
bac
a^2bc
"""

# M2(F) under the Jordan tetrad wxyz + zyxw
M2_TETRAD_GENERATORS = """
a^4 - a
aba^2 + a^2ba
ab^2a
aca^2 + a^2ca
acba + abca - a
ac^2a
ada^2 + a^2da
adba + abda
adca + acda
ad^2a
ba^3 + a^3b - b
ba^2b
baba + abab
baca + acab
bada + adab
b^2a^2 + a^2b^2
b^2ab + bab^2
b^3a + ab^3
b^4
b^2ca + acb^2
b^2da + adb^2
bca^2 + a^2cb - a
bcab + bacb - b
bcba + abcb - b
bcb^2 + b^2cb
bc^2a + ac^2b
bc^2b
bcda + adcb
bda^2 + a^2db
bdab + badb
bdba + abdb
bdb^2 + b^2db
bdca + acdb - a
bdcb + bcdb - b
bd^2a + ad^2b
bd^2b
ca^3 + a^3c - c
ca^2b + ba^2c - d
ca^2c
caba + abac
cab^2 + b^2ac
caca + acac
cacb + bcac
cada + adac
cadb + bdac
cba^2 + a^2bc - a
cbab + babc
cbac + cabc - c
cb^2a + ab^2c
cb^3 + b^3c
cb^2c
cbca + acbc - c
cbcb + bcbc - d - a
cbda + adbc
cbdb + bdbc
c^2a^2 + a^2c^2
c^2ab + bac^2
c^2ac + cac^2
c^2ba + abc^2
c^2b^2 + b^2c^2
c^2bc + cbc^2
c^3a + ac^3
c^3b + bc^3
c^4
c^2da + adc^2
c^2db + bdc^2
cda^2 + a^2dc
cdab + badc
cdac + cadc
cdba + abdc - a
cdb^2 + b^2dc
cdbc + cbdc - c
cdca + acdc
cdcb + bcdc
cdc^2 + c^2dc
cd^2a + ad^2c
cd^2b + bd^2c - a
cd^2c
da^3 + a^3d
da^2b + ba^2d
da^2c + ca^2d
da^2d
daba + abad
dab^2 + b^2ad
dabc + cbad
daca + acad
dacb + bcad
dac^2 + c^2ad
dada + adad
dadb + bdad
dadc + cdad
dba^2 + a^2bd - b
dbab + babd
dbac + cabd - d
dbad + dabd
db^2a + ab^2d
db^3 + b^3d
db^2c + cb^2d
db^2d
dbca + acbd
dbcb + bcbd - b
dbc^2 + c^2bd
dbda + adbd
dbdb + bdbd
dbdc + cdbd
dca^2 + a^2cd - c
dcab + bacd - d
dcac + cacd
dcad + dacd
dcba + abcd
dcb^2 + b^2cd
dcbc + cbcd - c
dcbd + dbcd - d
dc^2a + ac^2d
dc^2b + bc^2d
dc^3 + c^3d
dc^2d
dcda + adcd
dcdb + bdcd
dcdc + cdcd
d^2a^2 + a^2d^2
d^2ab + bad^2
d^2ac + cad^2
d^2ad + dad^2
d^2ba + abd^2 - b
d^2b^2 + b^2d^2
d^2bc + cbd^2 - d
d^2bd + dbd^2
d^2ca + acd^2 - c
d^2cb + bcd^2 - d
d^2c^2 + c^2d^2
d^2cd + dcd^2
d^3a + ad^3
d^3b + bd^3 - b
d^3c + cd^3 - c
d^4 - d
"""

M2_TETRAD_BASIS = """
ad
b^2
bd - ab
c^2
cd - ac
da
db - ba
dc - ca
d^2 - cb - bc + a^2
aba
aca
acb + abc - a^3
bab
bca - abc
bcb - ba^2 - a^2b
cac
cba + abc - a^3
cbc - ca^2 - a^2c
a^4 - a
ba^3 + a^3b - b
ba^2b
ca^3 + a^3c - c
ca^2b + ba^2c - d
ca^2c
cabc + a^3c - c
"""

M2_TETRAD_NORMAL_WORDS = """
1
a
b
c
d
a^2
ab
ac
ba
bc
ca
cb
a^3
a^2b
a^2c
abc
ba^2
bac
ca^2
cab
a^3b
a^3c
a^2bc
ba^2c
a^3bc
"""

M2_TETRAD_MOST_COMPLICATED = "bcbcdcd + bcbc^2d^2 + dcd^2 + c^2bd + cbdc + cbcd + bdc^2 - adcd - c"

M2_TETRAD_COMPOSITIONS = 2769

# Basis reached by the Jordan-type trilinear operations on a(1,2)
A2_JORDAN_BASIS = """
a^2
ab
ad
ba
b^2
bc
bd - ac
c^2
cd
dc
d^2
aca - a
acb - b
cac - c
dac - d
"""

A2_JORDAN_NORMAL_WORDS = """
1
a
b
c
d
ac
ca
cb
da
db
"""

# Completion that never terminates: one new generator ab^ka - b^ka per iteration
ABA_GENERATORS = """
aba - ba
"""

ABA_FIRST_ITERATION = """
aba - ba
ab^2a - b^2a
"""

ABA_SECOND_ITERATION = """
aba - ba
ab^2a - b^2a
ab^3a - b^3a
ab^4a - b^4a
"""

# Completion where self-compositions matter
CC_GENERATORS = """
aba - a^2b - a
bab - ab^2 - b
"""

CC_FIRST_ITERATION = """
aba - a^2b - a
bab - ab^2 - b
ba^2b - ab^2a
a^2b^2a - a^3b^2 - 2a^2b
"""

CC_SECOND_ITERATION = """
aba - a^2b - a
bab - ab^2 - b
ba^2b - ab^2a
a^2b^2a - a^3b^2 - 2a^2b
ba^3b - ab^2a^2 + ba^2
a^3b^3a - a^4b^3 - 3a^3b^2
ba^4b^2 - a^2b^3a^2 + 2ab^2a^2 - 2ba^2
a^4b^4a - a^5b^4 - 4a^4b^3
"""

# sl2 over h < e < f
SL2_GENERATORS = """
eh - he + 2e
fh - hf - 2f
fe - ef + h
"""
