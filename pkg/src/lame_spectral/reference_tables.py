"""Reference values for the spectral, twisted and covering polynomials.

Each entry is a plain-text expression readable by ``algebra.parse_poly``.
They are frozen here so that the recurrences and eliminations can be
checked against an independent transcription.  Cohn polynomials are in J.
"""

HERMITE_HALPHEN = {
    1: 'x-B',
    2: 'x^2 - (1/3)Bx + ((1/9)B^2 -(1/4)g2)',
    3: 'x^3 -(1/5)Bx^2 + ((2/75)B^2-(1/4)g2 )x + (- (1/225)B^3 +(1/15)Bg2 - (1/4)g3)',
}

# Lamé polynomials C, D y, E sqrt(x-e), F y/sqrt(x-e); only the factor in x is stored
LAME_I = {
    1: None,
    2: 'x-(1/6)B',
    3: '1',
    4: 'x^2-(1/14)Bx+((1/280)B^2-(3/20) g2)',
    5: '(x-(1/18)B )',
    6: (
        'x^3-(1/22)B x^2+((1/792)B^2 -(5/24) g2) x + (-(1/33264)B^3+(13/1584) B '
        'g2-(1/7)g3)'
    ),
    7: '(x^2-(1/26)B x+(1/1144)B^2-(5/44) g2 )',
    8: (
        'x^4-(1/30)Bx^3+((1/1560)B^2-(7/26) g2)x^2+(-(1/102960)B^3+(9/1144) B g2-(2/11) '
        'g3)x +((1/7413120)B^4-(7/51480) B^2 g2+ (7/1320) B g3+(7/624) g2^2)'
    ),
}

LAME_II = {
    1: '1',
    2: '1',
    3: '(x + (-(1/10)B+(1/2)e) )',
    4: '(x + (- (1/14)B-(1/2)e) )',
    5: '(x^2 +(-(1/18)B+(1/2)e ) x+((1/504)B^2-(1/36)B e+(3/8) e^2-(5/28) g2) )',
    6: '(x^2 +(-(1/22)B-(1/2)e ) x +((1/792)B^2+(1/44)B e -(1/8)e^2-(1/12)g2) )',
    7: (
        '(x^3+(-(1/26)B + (1/2)e )x^2+((1/1144)B^2 -(1/52)B e +(3/8) e^2 -(21/88) g2 )x '
        '+(-(1/61776)B^3+(1/2288)B^2 e-(3/208) B e^2+(493/61776) B g2-(29/704) e '
        'g2-(145/1728) g3) )'
    ),
    8: (
        '(x^3+(-(1/30)B-(1/2)e )x^2+((1/1560)B^2 +(1/60)B e -(1/8)e^2 -(15/104) g2 )x '
        '+(-(1/102960)B^3-(1/3120)B^2 e+(1/240)B e^2+(127/34320) B g2+(47/832) e '
        'g2-(51/704) g3) )'
    ),
}

SPECTRAL_I = {
    1: '1',
    2: 'B^2-3g2',
    3: 'B',
    4: 'B^3-52g2B + 560g3',
    5: 'B^2-27g2',
    6: 'B^4-294g2B^2 + 7776g3B + 3465g2^2',
    7: 'B^3-196g2B + 2288g3',
    8: 'B^5-1044g2B^3+48816g3B^2+112320g2^2B-4665600g2g3',
}

SPECTRAL_II = {
    1: 'B-e',
    2: 'B+3e',
    3: 'B^2-6e B + (45e^2 - 15g2)',
    4: 'B^2+10e B + (-35e^2 - 7g2)',
    5: 'B^3 -15 e B^2 +(315 e^2 -132 g2)B +((675/4) e g2+ (2835/4) g3)',
    6: 'B^3 +21 e B^2 +(-189 e^2 -84 g2)B +(-(3465/4) e g2+ (4455/4) g3)',
    7: (
        'B^4 -28 e B^3 +(1134 e^2-574 g2)B^2 +(3409 e g2 +8525 g3)B +(-(292383/4) e^2 '
        'g2-(175175/4) e g3+22113 g2^2)'
    ),
    8: (
        'B^4 + 36 e B^3 + (- 594 e^2 - 414 g2) B^2 + (- 9855 e g2 + 12285 g3 ) B + '
        '((245025/4) e^2 g2 + (552825/4) e g3 + 7425 g2^2 )'
    ),
}

TWISTED_I = {
    1: '1',
    2: '1',
    3: 'B^2-(75/4)g2',
    4: 'B^3-(343/4)g2B-(1715/2)g3',
    5: (
        'B^6-(897/2)g2B^4-(19845/2)g3B^3+(546993/16)g2^2B^2+(5893965/8)g2g3B '
        '+((4100625/4)g2^3-(506345175/16)g3^2)'
    ),
    6: (
        'B^8-(2751/2)g2 B^6-(181521/2) g3B^5+(3407481/16)g2^2B^4+(164862621/8)g2g3B^3 '
        '+((677951505/16)g2^3-(15273476559/16)g3^2)B^2-(3362086035/8)g2^2g3B + '
        '(-(15980285475/4)g2^4 + (1664232587325/16) g2 g3^2)'
    ),
    7: (
        'B^12 - 4186 g2 B^10 - (1048223/2) g3 B^9 + (17433633/8) g2^2 B^8 + '
        '(3510785355/8) g2 g3 B^7 +((4590448625/4) g2^3 - (59437238487/2) g3^2) B^6 - '
        '(3146848477773/32) g2^2 g3 B^5 +(- (239496271862939/256) g2^4 + '
        '(349377693363699/16) g2 g3^2 )B^4 + ((2167403005460693/128) g2^3 g3 - '
        '(10531741687878125/32) g3^3) B^3 + ((1196552376313749/8) g2^5 - '
        '(243386984019562383/64) g2^2 g3^2) B^2 + (-(570084251356448829/128) g2^4 '
        'g3+(15458554942852896875/128) g2 g3^3) B +(-(1649721227262688125/256) g2^6 '
        '+(16766233150463677881/128) g2^3 g3^2 +(285799721595172159375/256) g3^4)'
    ),
    8: (
        'B^15 -10188g2B^13 -(4944861/2)g3B^12 +(48623733/8)g2^2B^11 '
        '+(33098210361/8)g2g3B^10 +((210211163145/8)g2^3-(1634908193451/4)g3^2)B^9 '
        '-(46667883177495/32)g2^2g3B^8 +(-(9879747455405475/256)g2^4 '
        '+(13114846350610875/16)g2g3^2 )B^7 '
        '+((27951449759004375/128)g2^3g3-(268903562388069375/32)g3^3)B^6 '
        '+((1268095592996251875/64)g2^5-(16057777970613965625/32)g2^2g3^2)B^5 '
        '+(-(67310182108529184375/128)g2^4g3 +(1998126475855699190625/128)g2g3^3)B^4 '
        '+(-(1247302375822866515625/256)g2^6 +(15203913100824300328125/128)g2^3g3^2 '
        '+(83437068242769811171875/256)g3^4)B^3 +((2476060022819411015625/16)g2^5g3 '
        '-(67800902314274734921875/16)g2^2g3^3)B^2 +((8803296317899887890625/16)g2^7 '
        '-(100408533824565875390625/8)g2^4g3^2 -(1003123416299777251171875/16)g2g3^4)B '
        '+((14047813273244501953125/2)g2^6g3 -305679140836374550781250g2^3g3^3 '
        '+(6263785284763018974609375/2)g3^5)'
    ),
}

TWISTED_II = {
    1: '1',
    2: 'B-6e',
    3: 'B^2 -15e B+(-225e^2+(75/4)g2)',
    4: (
        'B^4-55 e B^3+(-945 e^2+(539/4) g2) B^2+(1960 e g2 +2450 g3) B +(61740 e^2 '
        'g2-68600 e g3- 9261g2^2)'
    ),
    5: (
        'B^6-105 e B^5+(-7245 e^2+(1707/2) g2)B^4+((16065/4) e g2+(19845/4) g3)B^3 '
        '+((5077485/4) e^2 g2-(2679075/4) e g3-(2419551/16) g2^2)B^2 +(-(56260575/4) '
        'e^2g3 + 1530900 e g2^2 +(54117315/16) g2 g3)B +(-(86113125/2) e^2 '
        'g2^2+(120558375/2) e g2 g3+(36905625/8) g2^3+(506345175/8) g3^2)'
    ),
    6: (
        'B^9 -231 e B^8 +(-21735 e^2 +(6699/2) g2) B^7 +((255087/4) e g2 + (610983/4) g3) '
        'B^6 +((72454095/4) e^2 g2 -(58128273/4) e g3 -(38437119/16) g2^2) B^5 '
        '+((118721295/4) e^2 g3 -(7116417/2) e g2^2 -(249847983/16) g2 g3) B^4 '
        '+(-(8838982845/2) e^2 g2^2 +(10241858781/2) e g2 g3 +(4499132715/8) g2^3 '
        '+2338773426 g3^2) B^3 +((6418527885/2) e^2 g2 g3 +(8690105655/4) e g2^3 '
        '-86375046681 e g3^2 -(13550225535/8) g2^2 g3) B^2 +((1189804891275/4) e^2 g2^3 '
        '+1089315875340 e^2 g3^2-(1906302781845/4) e g2^2 g3 -(783033988275/16) g2^4 '
        '-151293871575 g2 g3^2) B +((11649628111275/4) e^2 g2^2 g3-335585994975 e g2^4 '
        '+4992697761975 e g2 g3^2 -(15101369773875/16) g2^3 g3 +12838365673650 g3^3)'
    ),
}

# l = 6: the constant term is (96850215/4) g2^3 - 576357606 g3^2; with the factor
# 1/4 on the g3^2 term instead, the Hermite-Krichever residuals fail to vanish
THETA_TWISTED = {
    1: '1',
    2: '1',
    3: '1',
    4: 'B^2-(196/3)g2',
    5: 'B^3-(1053/4)g2B-(25515/4)g3',
    6: (
        'B^6-(4599/4) g2 B^4 -(120285/2) g3 B^3 +160083 g2^2 B^2+(20376279/2) g2 g3 B '
        '+((96850215/4)g2^3 - 576357606g3^2)'
    ),
    7: (
        'B^8 -(19565/6) g2 B^6 -(832843/2) g3 B^5 +(26047931/48) g2^2 B^4 '
        '+(4205970769/24) g2 g3 B^3 +((37048456991/48) g2^3 -(204966441251/16) g3^2) B^2 '
        '+(8684628953/6) g2^2 g3 B +(-(552623218875/4) g2^4 +(43902444356771/12) g2g3^2)'
    ),
    8: (
        'B^12 -(18063/2)g2B^10 -(4067739/2)g3B^9 +(73174185/16)g2^2B^8 '
        '+(22697632971/8)g2g3B^7 +(28431/16)(10247115 g2^3 - 167402573 g3^2)B^6 '
        '-(1385229823965/2)g2^2g3B^5 +(492075/4) (- 164228833 g2^4 + 3606494307 '
        'g2g3^2)B^4 +63969750000 (2175 g2^3 g3 - 101062 g3^3)B^3 +98415000 (62738863 g2^5 '
        '- 1656031845 g2^2g3^2)B^2 +921164400000 (-256036 g2^4g3 + 7098507 g2g3^3)B + '
        '19683000000 (-35153041 g2^6 +669725199 g2^3 g3^2 +7578832716 g3^4)'
    ),
}

REDUCTION = {
    1: '1',
    2: 'B',
    3: 'B^2-(15/4)g2',
    4: 'B^3-(91/4) g2 B + (175/2) g3',
    5: 'B^4-(321/4) g2 B^2 + (2835/4) g3 B + (891/2) g2^2',
    6: 'B^5-(861/4) g2 B^3+(12879/4) g3 B^2+(24255/4) g2^2B-(280665/4) g2 g3',
    7: (
        'B^6-(973/2) g2 B^4+10813 g3 B^3+(681373/16) g2^2 B^2-(2145143/2) g2 g3 '
        'B+(54071875/16) g3^2-(5417685/16) g2^3'
    ),
    8: (
        'B^7-(1953/2) g2 B^5+29916 g3 B^4+(3335445/16) g2^2 B^3-(34152435/4) g2 g3 B^2 '
        '+(-(122490225/16) g2^3 + (937038375/16) g3^2 )B+179425125 g2^2 g3'
    ),
}

COHN_I = {
    1: None,
    2: 'J',
    3: None,
    4: '2^2 3^5 J+5^2 7^2',
    5: 'J',
    6: '2^4 3^2 5^2 J^2+11* 37* 59 J-2^2 3^7',
    7: '2^4 3^5 5^2 J+11^2 13^2',
    8: 'J (2^12 3^5 5^2 7^2 J^3+2^8 3^3 3664447 J^2-2^4 3^2* 397* 364069 J+113^5)',
}

COHN_II = {
    1: None,
    2: None,
    3: '2^2 J+1',
    4: '2^2 3^5 J-5^3',
    5: '2^14 3^6 J^3+2^9 3^3 5^2 109 J^2-2^2 5^4 17* 151 J+5^6 7^3',
    6: '2^16 3^6 5^2 J^3+2^11 3^3 17* 359 J^2+2^4 57774169 J+3^3 109^3',
    7: (
        '2^20 3^21 5^6 J^6+2^16 3^17 5^4 19* 22307 J^5 + 2^13 3^13 5^5 22158751 J^4 +2^9 '
        '3^6 5^2 1276543* 414016613 J^3- 2^4 3^5 5^2 47202908378639011 J^2 +3^7 29* 41* '
        '101* 895253* 8050981 J-2^5 5^6 11^3 37^3 113^3'
    ),
    8: (
        '2^20 3^9 5^2 7^2 J^6+2^16 3^9 107* 419 J^5+2^13 3^7 12486499 J^4-2^9 3^7 1171* '
        '10477 J^3 -2^4 3^4 11* 47* 91938173 J^2+3^4 20593* 844499 J-2^5 7^3 13^3 29^3'
    ),
}


# Jacobi form Ltilde_l(E|m), as products of factors in E and m
JACOBI_SPECTRAL = {
    1: ["E-1", "E-m", "E-m-1"],
    2: ["E^2-4(m+1)E+12m", "E-m-1", "E-4m-1", "E-m-4"],
    3: ["E-4m-4", "E^2-2(2m+5)E+3(8m+3)", "E^2-2(5m+2)E+3(3m^2+8m)",
        "E^2-10(m+1)E+3(3m^2+26m+3)"],
}

# reduced energy for l = 2 as numerator and denominator in E and m
REDUCED_ENERGY_2 = ("E^3 - 12(m+1)^2 E - 4(m+1)(4m^2-19m+4)", "9(E^2-4(m+1)E+12m)")

# x0 for l = 2 in the Weierstrass picture
X0_2 = ("B^3+27g3", "9(B^2-3g2)")

JACOBI_ALIASES = {"E": "x", "m": "k"}


def lame_factor(l: int, kind: str) -> str:
    """The non-polynomial factor multiplying the stored Lamé polynomial."""
    if kind == "I":
        return "y" if l % 2 else ""
    return "sqrt(x-e)" if l % 2 else "y/sqrt(x-e)"


TABLES = {
    "hermite": HERMITE_HALPHEN, "lame_I": LAME_I, "lame_II": LAME_II,
    "spectral_I": SPECTRAL_I, "spectral_II": SPECTRAL_II,
    "twisted_I": TWISTED_I, "twisted_II": TWISTED_II, "theta": THETA_TWISTED,
    "reduction": REDUCTION, "cohn_I": COHN_I, "cohn_II": COHN_II,
}


def reference(family: str, l: int):
    """Parsed reference polynomial, or None where the entry is undefined."""
    from .algebra import parse_poly
    s = TABLES[family].get(l)
    if s is None:
        return None
    return parse_poly(s, aliases={"J": "x"} if family.startswith("cohn") else None)


def jacobi_reference(l: int):
    """Product of the stored factors of Ltilde_l, in E (slot x) and m (slot k)."""
    from .algebra import Poly, parse_poly
    out = Poly.const(1)
    for f in JACOBI_SPECTRAL[l]:
        out = out * parse_poly(f, aliases=JACOBI_ALIASES)
    return out
