"""Correction constants produced by ``derive_family``.

Generated by ``gamma-sharp constants --emit-source``; do not edit.
"""

CONSTANTS = {
    'GOSPER_CF': [
        {
            'kappa_0': '1/72',
            'lambda_0': '31/90',
        },
        {
            'kappa_1': '5929/32400',
            'lambda_1': '481937/3735270',
        },
        {
            'kappa_2': '76899172249/248039857296',
            'lambda_2': '7745462509019287/19149278075101482',
        },
        {
            'kappa_3': '786873417270631211749921/851541507731717527392144',
            'lambda_3': '2098335745817751685364201067279071/30311088872486921466334781589254970',
        },
    ],
    'GOSPER_PRODUCT': [
        {
            'kappa_0': '-1/144',
            'lambda_0': '4007/21600',
        },
        {
            'kappa_1': '4394/637875',
            'lambda_1': '130311599/15575040',
        },
        {
            'kappa_2': '7894414898425/119793516544',
            'lambda_2': '-265702682899837009577/34427631789478287360',
        },
        {
            'kappa_3': '1897560849252106177858465792/77174813342532578267347147395',
            'lambda_3': '30320380455616293004898928163131563244811979/6134364315672065325746652708240298034227200',
        },
    ],
    'RAMANUJAN_CF': [
        {
            'a_0': '-11/240',
            'b_0': '79/154',
        },
        {
            'a_1': '459733/711480',
            'b_1': '-1455925/70798882',
        },
        {
            'a_2': '49600874140433/101450127018720',
            'b_2': '10259108965771635091/19545564575317443762',
        },
        {
            'a_3': '169085305336152527131511003963/101221579151797375403194730976',
            'b_3': '-6141448535908002711219920016488834171/203275987838924050801436670299517447102',
        },
    ],
    'RAMANUJAN_MIXED': [
        {
            'kappa_0': '-11/240',
            'lambda_0': '79/154',
        },
        {
            'kappa_1': '459733/15523200',
            'lambda_10': '71181889/70798882',
            'lambda_11': '717183502490887/520777318696096',
            'lambda_12': '1118629052995381153799/1958878792277282473920',
        },
    ],
}
