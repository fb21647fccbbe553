"""Reference values frozen from scripts/freeze_oracles.py.

Each constant was computed independently of secrecy_lab (mpmath quadrature or
series at 30 digits, or nested scipy quadrature for the double integrals).
Naming: <quantity>_<arguments>, beta = 2.7 throughout.
"""

GAMMAINC_A_BETA27_X1 = 0.24735131607504992
K0_1 = 0.42102443824070833
K0_100 = 4.6566282291759020e-45
K0_2 = 0.11389387274953344
HYP2F1_2_05_25_05 = 1.3045135806310373
HYP3F2_PSI_EVEN_BETA27_X025 = 1.1783927167451777
INNER_Z1_G1_R20_B27 = 0.99215491042699667
PSI_Z1_R20_B27 = 0.98985140030493546
PSI_Z100_R20_B27 = 0.78743354223202366
MAIN_LINK_Z1_PS10_RD4_B27 = 0.71551096252222371
MAIN_LINK_Z01_PS10_RD4_B27 = 0.96389001315697223
EAV_Z005_PS10_RMAX10_B27 = 0.97688474419033422
PSI_Z1_R40_B27 = 0.99733043320440584
GAIN_MEAN = 1.5707963267948966
GAIN_CDF_1 = 0.39809276980276543
RECEIVED_POWER_10_15_4_27 = 0.35524607027587455
