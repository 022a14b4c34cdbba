#pragma once

// Bundled default data files (mirrors of data/*.csv and data/*.par).
// Regenerate with tools/embed_data.py after editing data/.

#include <string_view>

namespace mrnaco::bundled {

inline constexpr std::string_view kHumanCodonTable = R"mrnaco(# Homo sapiens codon usage (NCBI taxid 9606), fraction of each codon among its
# synonymous codons. Derived from the Kazusa codon usage database per-thousand
# counts (GenBank primate division, 93487 CDS), the same source packaged by
# python_codon_tables as h_sapiens_9606. Stop codons are omitted.
#
# format: amino_acid,codon,frequency
A,GCA,0.2280
A,GCC,0.3997
A,GCG,0.1068
A,GCU,0.2655
C,UGC,0.5431
C,UGU,0.4569
D,GAC,0.5352
D,GAU,0.4648
E,GAA,0.4227
E,GAG,0.5773
F,UUC,0.5356
F,UUU,0.4644
G,GGA,0.2500
G,GGC,0.3364
G,GGG,0.2500
G,GGU,0.1636
H,CAC,0.5808
H,CAU,0.4192
I,AUA,0.1693
I,AUC,0.4695
I,AUU,0.3612
K,AAA,0.4334
K,AAG,0.5666
L,CUA,0.0719
L,CUC,0.1956
L,CUG,0.3952
L,CUU,0.1317
L,UUA,0.0768
L,UUG,0.1287
M,AUG,1.0000
N,AAC,0.5291
N,AAU,0.4709
P,CCA,0.2766
P,CCC,0.3241
P,CCG,0.1129
P,CCU,0.2864
Q,CAA,0.2645
Q,CAG,0.7355
R,AGA,0.2152
R,AGG,0.2116
R,CGA,0.1093
R,CGC,0.1834
R,CGG,0.2011
R,CGU,0.0794
S,AGC,0.2404
S,AGU,0.1492
S,UCA,0.1504
S,UCC,0.2182
S,UCG,0.0543
S,UCU,0.1874
T,ACA,0.2838
T,ACC,0.3553
T,ACG,0.1147
T,ACU,0.2462
V,GUA,0.1170
V,GUC,0.2389
V,GUG,0.4629
V,GUU,0.1812
W,UGG,1.0000
Y,UAC,0.5564
Y,UAU,0.4436
)mrnaco";

inline constexpr std::string_view kTurner2004Params = R"mrnaco(# Nearest-neighbor free-energy parameters, kcal/mol at 37 C.
# Values are the Turner 2004 set (Mathews et al. 2004) as distributed in the
# ViennaRNA 2.x rna_turner2004.par file, reduced to the terms this evaluator uses:
# stacks, hairpin/bulge/internal initiation by size, the special hairpin loops,
# terminal AU/GU penalty.
#
# stack XY ZW e : 5'-XY-3' paired with 3'-ZW-5' (outer pair X-Z, inner pair Y-W)
# hairpin|bulge|internal <size> e : loop initiation for <size> unpaired bases
# special_hairpin <bases> e : total energy of a hairpin whose closing pair and
#   loop spell <bases>; replaces initiation and terminal penalty
# terminal_au e : per helix end closed by A-U or G-U
# multiloop e : constant per multiloop

stack CG GC -2.40
stack CC GG -3.30
stack CU GG -2.10
stack CG GU -1.40
stack CU GA -2.10
stack CA GU -2.10
stack GG CC -3.30
stack GC CG -3.40
stack GU CG -2.50
stack GG CU -1.50
stack GU CA -2.20
stack GA CU -2.40
stack GG UC -2.10
stack GC UG -2.50
stack GU UG 1.30
stack GG UU -0.50
stack GU UA -1.40
stack GA UU -1.30
stack UG GC -1.40
stack UC GG -1.50
stack UU GG -0.50
stack UG GU 0.30
stack UU GA -0.60
stack UA GU -1.00
stack AG UC -2.10
stack AC UG -2.20
stack AU UG -1.40
stack AG UU -0.60
stack AU UA -1.10
stack AA UU -0.90
stack UG AC -2.10
stack UC AG -2.40
stack UU AG -1.30
stack UG AU -1.00
stack UU AA -0.90
stack UA AU -1.30

hairpin 3 5.40
hairpin 4 5.60
hairpin 5 5.70
hairpin 6 5.40
hairpin 7 6.00
hairpin 8 5.50
hairpin 9 6.40
hairpin 10 6.50
hairpin 11 6.60
hairpin 12 6.70
hairpin 13 6.80
hairpin 14 6.90
hairpin 15 6.90
hairpin 16 7.00
hairpin 17 7.10
hairpin 18 7.10
hairpin 19 7.20
hairpin 20 7.20
hairpin 21 7.30
hairpin 22 7.30
hairpin 23 7.40
hairpin 24 7.40
hairpin 25 7.50
hairpin 26 7.50
hairpin 27 7.50
hairpin 28 7.60
hairpin 29 7.60
hairpin 30 7.70

special_hairpin CAACG 6.80
special_hairpin GUUAC 6.90
special_hairpin CAACGG 5.50
special_hairpin CCAAGG 3.30
special_hairpin CCACGG 3.70
special_hairpin CCCAGG 3.40
special_hairpin CCGAGG 3.50
special_hairpin CCGCGG 3.60
special_hairpin CCUAGG 3.70
special_hairpin CCUCGG 2.50
special_hairpin CUAAGG 3.60
special_hairpin CUACGG 2.80
special_hairpin CUCAGG 3.70
special_hairpin CUCCGG 2.70
special_hairpin CUGCGG 2.80
special_hairpin CUUAGG 3.50
special_hairpin CUUCGG 3.70
special_hairpin CUUUGG 3.70
special_hairpin ACAGUACU 2.80
special_hairpin ACAGUGAU 3.60
special_hairpin ACAGUGCU 2.90
special_hairpin ACAGUGUU 1.80

bulge 1 3.80
bulge 2 2.80
bulge 3 3.20
bulge 4 3.60
bulge 5 4.00
bulge 6 4.40
bulge 7 4.60
bulge 8 4.70
bulge 9 4.80
bulge 10 4.90
bulge 11 5.00
bulge 12 5.10
bulge 13 5.20
bulge 14 5.30
bulge 15 5.40
bulge 16 5.40
bulge 17 5.50
bulge 18 5.50
bulge 19 5.60
bulge 20 5.70
bulge 21 5.70
bulge 22 5.80
bulge 23 5.80
bulge 24 5.80
bulge 25 5.90
bulge 26 5.90
bulge 27 6.00
bulge 28 6.00
bulge 29 6.00
bulge 30 6.10

internal 2 1.00
internal 3 1.00
internal 4 1.10
internal 5 2.00
internal 6 2.00
internal 7 2.10
internal 8 2.30
internal 9 2.40
internal 10 2.50
internal 11 2.60
internal 12 2.70
internal 13 2.80
internal 14 2.90
internal 15 2.90
internal 16 3.00
internal 17 3.10
internal 18 3.10
internal 19 3.20
internal 20 3.30
internal 21 3.30
internal 22 3.40
internal 23 3.40
internal 24 3.50
internal 25 3.50
internal 26 3.50
internal 27 3.60
internal 28 3.60
internal 29 3.70
internal 30 3.70

terminal_au 0.50
multiloop 0.00
)mrnaco";

}  // namespace mrnaco::bundled
