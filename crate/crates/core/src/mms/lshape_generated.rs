// @generated by tools/gen_lshape.py; do not edit by hand.
#![allow(clippy::all)]

use std::f64::consts::PI;

/// Singular exponent of the clamped-plate corner function on the 270 degree corner.
pub const UPSILON: f64 = 0.54448373678246392914;

/// `[w, w_x, w_y, w_xx, w_xy, w_yy, bilaplacian w]`
#[allow(clippy::all, unused_parens)]
pub(crate) fn deflection_profile(x: f64, y: f64, r: f64, phi: f64) -> [f64; 7] {
    let c0 = r.powf(1.5444837367824639291408768546);
    let c1 = x.powi(2);
    let c2 = c1 - 1.0;
    let c3 = c2.powi(2);
    let c4 = c0*c3;
    let c5 = y.powi(2);
    let c6 = c5 - 1.0;
    let c7 = c6.powi(2);
    let c8 = 0.4555162632175360708591231453988260092636*phi + 0.2277581316087680354295615726994130046318*PI;
    let c9 = c8.sin();
    let c10 = 1.544483736782463929140876854601173990736*phi + 0.7722418683912319645704384273005869953682*PI;
    let c11 = c10.sin();
    let c12 = c8.cos();
    let c13 = c10.cos();
    let c14 = -0.705068915671143632043149659838*c11 + 1.29828875233424340332135077885*c12 - 1.29828875233424340332135077885*c13 + 2.39062260010875003807948662777*c9;
    let c15 = c14*c7;
    let c16 = c0*c15;
    let c17 = 4.0*c2;
    let c18 = c16*c17;
    let c19 = r.powf(-0.455516263217536070859123145399);
    let c20 = c19*c3;
    let c21 = 1.5444837367824639291408768546*c20;
    let c22 = c15*c21;
    let c23 = r.powi(-2);
    let c24 = 0.591391641040651716036728047819*c23*c9;
    let c25 = 2.00518586362783509060597350989*c11*c23;
    let c26 = 1.0889674735649278582817537092*c23;
    let c27 = c12*c26;
    let c28 = c13*c26;
    let c29 = c24*y - c25*y - c27*y + c28*y;
    let c30 = c4*c7;
    let c31 = c14*c4;
    let c32 = 4.0*c6;
    let c33 = c31*c32;
    let c34 = 2.00518586362783509060597350989*c11*c23*x + 1.0889674735649278582817537092*c12*c23*x - c24*x - c28*x;
    let c35 = c15*c19;
    let c36 = c2*c35;
    let c37 = r.powf(-2.4555162632175360708591231454);
    let c38 = c15*c37;
    let c39 = c3*c38;
    let c40 = 0.703537460379404536540022399375*c39;
    let c41 = c0*c2;
    let c42 = 8.0*c41;
    let c43 = c29*c7;
    let c44 = c43*x;
    let c45 = 3.0889674735649278582817537092*c20;
    let c46 = r.powi(-4);
    let c47 = c46*c9;
    let c48 = c47*y;
    let c49 = 1.18278328208130343207345609564*c48;
    let c50 = c49*x;
    let c51 = c11*c46;
    let c52 = c51*y;
    let c53 = 4.01037172725567018121194701978*c52;
    let c54 = c53*x;
    let c55 = c12*c46;
    let c56 = 2.1779349471298557165635074184*y;
    let c57 = c55*c56;
    let c58 = c57*x;
    let c59 = c13*c46;
    let c60 = c56*c59;
    let c61 = c60*x;
    let c62 = c47*c5;
    let c63 = c5*c55;
    let c64 = 1.68189255280611878520170891045*c11*c46*c5 + 3.09697695559929086384299078659*c13*c46*c5 - c50 + c54 + c58 - c61 - 0.496042394323736931361798507952*c62 - 0.269388510424924114704499862449*c63;
    let c65 = x*y;
    let c66 = c14*c6;
    let c67 = c41*c66;
    let c68 = 6.1779349471298557165635074184*c20;
    let c69 = c7*x;
    let c70 = c34*c69;
    let c71 = c4*y;
    let c72 = 3.09697695559929086384299078659*c59*c65;
    let c73 = 1.68189255280611878520170891045*c52*x;
    let c74 = c24 - c25 - c27 + c28;
    let c75 = 0.496042394323736931361798507952*c48*x + 4.01037172725567018121194701978*c5*c51 - 2.1779349471298557165635074184*c5*c59 + 0.269388510424924114704499862449*c55*c65 - 1.18278328208130343207345609564*c62 + 2.1779349471298557165635074184*c63 - c72 - c73 + c74;
    let c76 = 12.3558698942597114331270148368*c20;
    let c77 = c5*c66;
    let c78 = 8.0*c6;
    let c79 = c34*c71;
    let c80 = c20*c34;
    let c81 = c80*y;
    let c82 = c1*c55;
    let c83 = 1.68189255280611878520170891045*c1*c11*c46 + 3.09697695559929086384299078659*c1*c13*c46 - 0.496042394323736931361798507952*c1*c47 + c50 - c54 - c58 + c61 - 0.269388510424924114704499862449*c82;
    let c84 = c1*c5;
    let c85 = c14*c84;
    let c86 = c0*c1;
    let c87 = c14*c5;
    let c88 = 64.0*c41;
    let c89 = x.powi(4);
    let c90 = y.powi(4);
    let c91 = c3*c90;
    let c92 = 33.76979809821141775392107517*c37;
    let c93 = c19*c2;
    let c94 = 197.693918308155382930032237389*c93;
    let c95 = c66*c84;
    let c96 = 49.4234795770388457325080593472*c20;
    let c97 = 98.8469591540776914650161186945*c93;
    let c98 = c1*c66;
    let c99 = c3*c37;
    let c100 = 11.25659936607047258464035839*c99;
    let c101 = c15*c89;
    let c102 = r.powf(-4.4555162632175360708591231454);
    let c103 = 27.6407628119102522330103110358*c102;
    let c104 = c103*c2;
    let c105 = c2*c38;
    let c106 = c2*c37;
    let c107 = r.powf(-6.4555162632175360708591231454);
    let c108 = 7.69711676476278761614133942614*c107;
    let c109 = c102*c3;
    let c110 = 13.8203814059551261165051555179*c109*c15;
    let c111 = c15*c84;
    let c112 = c29*x;
    let c113 = c112*c5;
    let c114 = c34*y;
    let c115 = c114*c6;
    let c116 = x.powi(3);
    let c117 = c116*c43;
    let c118 = y.powi(3);
    let c119 = c6*c88;
    let c120 = c114*c7;
    let c121 = c1*c120;
    let c122 = c20*c6;
    let c123 = 24.7117397885194228662540296736*c122;
    let c124 = 24.7117397885194228662540296736*c93;
    let c125 = c113*c6;
    let c126 = c1*c115;
    let c127 = c118*c34;
    let c128 = c44*c5;
    let c129 = 6.91019070297756305825257775894*c109;
    let c130 = c7*c83;
    let c131 = c64*c7;
    let c132 = c4*c83;
    let c133 = c4*c64;
    let c134 = c1*c130;
    let c135 = c1*c131;
    let c136 = c122*c5;
    let c137 = 1.40707492075880907308004479875*c99;
    let c138 = 4.22122476227642721924013439625*c99;
    let c139 = 2.1779349471298557165635074184*c1*c13*c46 + 1.18278328208130343207345609564*c1*c46*c9 - 4.01037172725567018121194701978*c1*c51 + 0.269388510424924114704499862449*c12*c46*x*y + 0.496042394323736931361798507952*c46*c9*x*y - c72 - c73 - c74 - 2.1779349471298557165635074184*c82;
    let c140 = c119*c65;
    let c141 = c65*c7;
    let c142 = c124*c141;
    let c143 = c123*c65;
    let c144 = 2.8141498415176181461600895975*c141*c99;
    let c145 = r.powi(-6);
    let c146 = c118*c145;
    let c147 = 2.59765569482459188028957230413*c13;
    let c148 = 0.122710847622499692881207052998*c9;
    let c149 = 16.0414869090226807248477880791*c11;
    let c150 = c1*c145;
    let c151 = c150*y;
    let c152 = 8.71173978851942286625402967362*c12;
    let c153 = c145*c5;
    let c154 = c153*x;
    let c155 = 18.5818617335957451830579447195*c13;
    let c156 = c11*c154;
    let c157 = c154*c9;
    let c158 = c12*c154;
    let c159 = c154*c155 + 10.0913553168367127112102534627*c156 - 2.97625436594242158817079104771*c157 - 1.61633106254954468822699917469*c158;
    let c160 = c69*(8.71173978851942286625402967362*c1*c13*c145*y + 4.73113312832521372829382438255*c1*c145*c9*y + 4.7832305411131716294758617787*c11*c118*c145 + 0.225955377859828172609751499126*c118*c12*c145 - c146*c147 - c146*c148 - c149*c151 - c151*c152 - c159 - c49 + c53 + c57 - c60);
    let c161 = c116*c145;
    let c162 = 0.225955377859828172609751499126*c12;
    let c163 = 4.7832305411131716294758617787*c11;
    let c164 = c151*c9;
    let c165 = 2.97625436594242158817079104771*c164;
    let c166 = c12*c151;
    let c167 = 1.61633106254954468822699917469*c166;
    let c168 = c151*c155;
    let c169 = 8.71173978851942286625402967362*c13;
    let c170 = 4.73113312832521372829382438255*c9;
    let c171 = 10.0913553168367127112102534627*c11*c151;
    let c172 = 2.1779349471298557165635074184*x;
    let c173 = c47*x;
    let c174 = c51*x;
    let c175 = -c172*c55 + c172*c59 + 1.18278328208130343207345609564*c173 - 4.01037172725567018121194701978*c174;
    let c176 = c147*c161 + c148*c161 + c149*c154 + c152*c154 - c154*c169 - c154*c170 - c161*c162 - c161*c163 + c165 + c167 - c168 - c171 + c175;
    let c177 = c7*y;
    let c178 = 12.3879078223971634553719631464*c13;
    let c179 = 6.72757021122447514080683564181*c11;
    let c180 = 0.992084788647473862723597015905*c47;
    let c181 = 0.538777020849848229408999724897*c55;
    let c182 = 6.19395391119858172768598157318*c59;
    let c183 = 3.3637851056122375704034178209*c51;
    let c184 = c180*x + c181*x - c182*x - c183*x;
    let c185 = 20.8247174501358523543236498578*c1*c11*c145*y + 8.93769516637925103886378117274*c1*c12*c145*y + 3.3637851056122375704034178209*c11*c145*c5*x + 1.07755404169969645881799944979*c116*c12*c145 + 1.98416957729494772544719403181*c116*c145*c9 + 6.19395391119858172768598157318*c13*c145*c5*x - 11.3093954833440147465436019777*c13*c151 - 0.992084788647473862723597015905*c157 - 0.538777020849848229408999724897*c158 - c161*c178 - c161*c179 - 4.85384397594771342117503143555*c164 - c184 + c49 - c53 - c57 + c60;
    let c186 = c42*c69;
    let c187 = 6.53380484138956714969052225521*y;
    let c188 = -c146*c149 - c146*c152 + c146*c169 + c146*c170 - c147*c151 - c148*c151 + c151*c162 + c151*c163 + c159 + c184 + c187*c55 - c187*c59 - 3.54834984624391029622036828691*c48 + 12.0311151817670105436358410593*c52;
    let c189 = c180*y + c181*y - c182*y - c183*y;
    let c190 = 3.3637851056122375704034178209*c1*c11*c145*y + 6.19395391119858172768598157318*c1*c13*c145*y + 1.07755404169969645881799944979*c118*c12*c145 + 1.98416957729494772544719403181*c118*c145*c9 + 11.3093954833440147465436019777*c13*c145*c5*x + 4.85384397594771342117503143555*c145*c5*c9*x - c146*c178 - c146*c179 - 20.8247174501358523543236498578*c156 - 8.93769516637925103886378117274*c158 - 0.992084788647473862723597015905*c164 - 0.538777020849848229408999724897*c166 - c175 - c189;
    let c191 = c71*c78;
    let c192 = 6.53380484138956714969052225521*x;
    let c193 = c147*c154 + c148*c154 + c149*c161 + c152*c161 - c154*c162 - c154*c163 - c161*c169 - c161*c170 - c165 - c167 + c168 + c171 + 3.54834984624391029622036828691*c173 - 12.0311151817670105436358410593*c174 + c189 - c192*c55 + c192*c59;
    let c194 = c45*c69;
    let c195 = c177*c45;
    let c196 = 3.96833915458989545089438806362*c9;
    let c197 = r.powi(-8);
    let c198 = c197*c89;
    let c199 = 0.102926349376615312098428486732*c9;
    let c200 = 0.0558967867652575304634862958606*c12;
    let c201 = 2.15510808339939291763599889959*c12;
    let c202 = 7.3876217800304782802881415021*c13;
    let c203 = 4.01203697441693341347252808622*c11;
    let c204 = 24.7758156447943269107439262927*c13;
    let c205 = 13.4551404224489502816136712836*c11;
    let c206 = c116*y;
    let c207 = c12*c197;
    let c208 = 2.71146453431793807131701798952*c207;
    let c209 = c145*c65;
    let c210 = 26.1352193655582685987620890209*c209;
    let c211 = c12*c210;
    let c212 = c13*c197;
    let c213 = c118*x;
    let c214 = 52.2704387311165371975241780417*c213;
    let c215 = c11*c197;
    let c216 = c206*c215;
    let c217 = c11*c209;
    let c218 = 48.1244607270680421745433642374*c217;
    let c219 = c197*c9;
    let c220 = c213*c219;
    let c221 = 31.1718683378951025634748676495*c212;
    let c222 = c206*c219;
    let c223 = c13*c210;
    let c224 = c213*c215;
    let c225 = c209*c9;
    let c226 = 14.1933993849756411848814731477*c225;
    let c227 = c212*c84;
    let c228 = c215*c84;
    let c229 = -11.8530944586966610469979939477*c207*c84 - 21.8258653502444249799191343499*c219*c84 + 136.26698604636879800909159461*c227 + 74.0032723234692265488751920599*c228;
    let c230 = c197*c90;
    let c231 = 52.2704387311165371975241780417*c206;
    let c232 = 33.637851056122375704034178209*c11;
    let c233 = 11.9050174637696863526831641909*c9;
    let c234 = 1.98416957729494772544719403181*c9;
    let c235 = 61.9395391119858172768598157318*c13;
    let c236 = 1.07755404169969645881799944979*c12;
    let c237 = 6.46532425019817875290799669877*c12;
    let c238 = c206*c207;
    let c239 = 67.2573828915207286924468113522*c217;
    let c240 = c212*c213;
    let c241 = 27.0390408769975812892010950174*c12*c209;
    let c242 = 36.5258421448566361199203782374*c13*c209;
    let c243 = 14.6842427754656399564063013597*c225;
    let c244 = -5.44366699526373982455348354483*c1*c12*c197*c5 - 10.0237742358513539393343986458*c1*c197*c5*c9 - 3.3637851056122375704034178209*c11*c46 - 6.19395391119858172768598157318*c13*c46 + c180 + c181 + 69.3271608920162955571479572339*c227 + 37.6498880305393091175067062953*c228;
    [c15*c4, c18*x + c22*x + c29*c30, c22*y + c30*c34 + c33*y, 8.0*c1*c16 + 12.3558698942597114331270148368*c1*c36 - c1*c40 + c18 + c22 + c30*c64 + c42*c44 + c44*c45, c0*c17*c70 + c21*c43*y + c21*c70 + c29*c32*c71 + c30*c75 + 6.1779349471298557165635074184*c36*c65 - c40*c65 + c65*c66*c68 + 16.0*c65*c67, c22 + c30*c83 + 8.0*c31*c5 + c33 - c40*c5 + 3.0889674735649278582817537092*c7*c81 + c76*c77 + c78*c79, 96.0*c0*c44 + 128.0*c0*c85 - 61.911296513387599215521971145*c1*c105 + c1*c110 + 247.117397885194228662540296736*c1*c35 - c100*c120 - c100*c126 - c100*c44 - c100*c85 + c101*c104 - c101*c108*c3 + c103*c66*c91 + c104*c111 - 5.628299683035236292320179195*c105*c5 - 22.51319873214094516928071678*c106*c121 - 11.25659936607047258464035839*c106*c128 - 90.05279492856378067712286712*c106*c95 - 15.3942335295255752322826788523*c107*c111*c3 - c108*c15*c91 + 27.6407628119102522330103110358*c109*c95 + c110*c5 + c112*c119 + c112*c123 + 128.0*c113*c41 + c113*c96 + c114*c119 + 128.0*c115*c86 + c117*c129 + 148.270438731116537197524178042*c117*c19 - c117*c2*c92 + 148.270438731116537197524178042*c118*c80 + c120*c124 + c121*c129 + 49.4234795770388457325080593472*c121*c19 + c124*c134 + c125*c94 - 22.51319873214094516928071678*c125*c99 + c126*c94 + c127*c129*c7 - c127*c3*c6*c92 + c128*c129 - c130*c138*c5 + c130*c42 + c130*c76 + 16.0*c130*c86 - c131*c137*c5 + 24.0*c131*c41 + c131*c76 + 48.0*c131*c86 + 48.0*c132*c5 + 24.0*c132*c6 + 16.0*c133*c5 + c133*c78 - c134*c137 - c135*c138 + 74.1352193655582685987620890209*c135*c93 + 24.7117397885194228662540296736*c136*c64 + 74.1352193655582685987620890209*c136*c83 + c139*c140 + c139*c142 + c139*c143 - c139*c144 - c14*c91*c92 + c140*c75 + c142*c75 + c143*c75 - c144*c75 + 24.0*c16 + 16.0*c160*c41 + c160*c68 + c176*c177*c68 + 16.0*c176*c6*c71 + c185*c186 + c185*c194 + c186*c188 + c188*c194 + 197.693918308155382930032237389*c19*c95 + c190*c191 + c190*c195 + c191*c193 + c193*c195 + 247.117397885194228662540296736*c20*c87 + c30*(c150*c196 + c150*c201 - c150*c204 - c150*c205 + c198*c199 + c198*c200 - c198*c202 - c198*c203 + c206*c208 - c206*c221 - c207*c214 + c211 + c212*c214 + 57.3987664933580595537103413444*c216 + c218 + 28.3867987699512823697629462953*c220 - 1.47253017146999631457448463598*c222 - c223 - 96.2489214541360843490867284747*c224 - c226 + c229) + c30*(c153*c196 + c153*c201 - c153*c204 - c153*c205 + c199*c230 + c200*c230 - c202*c230 - c203*c230 + c207*c231 - c208*c213 - c211 - c212*c231 + c213*c221 + 96.2489214541360843490867284747*c216 - c218 + 1.47253017146999631457448463598*c220 - 28.3867987699512823697629462953*c222 + c223 - 57.3987664933580595537103413444*c224 + c226 + c229) + c30*(6.72757021122447514080683564181*c1*c11*c145 + 12.3879078223971634553719631464*c1*c13*c145 + 144.081226865267800643845346262*c11*c118*c197*x + 40.3654212673468508448410138509*c11*c197*c90 + 5.19531138964918376057914460825*c116*c13*c197*y + 0.245421695244999385762414105996*c116*c197*c9*y + 54.529992509714818923621693033*c118*c12*c197*x + 5.38777020849848229408999724897*c12*c145*c5 + 74.3274469343829807322317788781*c13*c197*c90 + 9.92084788647473862723597015905*c145*c5*c9 - c150*c234 - c150*c236 - c153*c232 - c153*c235 - 9.5664610822263432589517235574*c216 - 29.6139072461762792985750168253*c220 - c230*c233 - c230*c237 - 0.451910755719656345219502998253*c238 - c239 - 78.246995679362456000419901083*c240 - c241 + c242 + c243 - c244) + c30*(5.38777020849848229408999724897*c1*c12*c145 + 9.92084788647473862723597015905*c1*c145*c9 + 9.5664610822263432589517235574*c11*c118*c197*x + 6.72757021122447514080683564181*c11*c145*c5 + 40.3654212673468508448410138509*c11*c197*c89 + 78.246995679362456000419901083*c116*c13*c197*y + 29.6139072461762792985750168253*c116*c197*c9*y + 0.451910755719656345219502998253*c118*c12*c197*x + 12.3879078223971634553719631464*c13*c145*c5 + 74.3274469343829807322317788781*c13*c197*c89 - c150*c232 - c150*c235 - c153*c234 - c153*c236 - c198*c233 - c198*c237 - 144.081226865267800643845346262*c216 - 0.245421695244999385762414105996*c220 - 54.529992509714818923621693033*c238 + c239 - 5.19531138964918376057914460825*c240 + c241 - c242 - c243 - c244) + 24.0*c31 + 49.4234795770388457325080593472*c36 - 11.25659936607047258464035839*c38*c84 - 33.76979809821141775392107517*c38*c89 - 5.628299683035236292320179195*c39 + 172.982178519635960063778207715*c44*c93 + 172.982178519635960063778207715*c6*c81 + 64.0*c66*c86 + c66*c96 + 32.0*c67 + c77*c97 - 61.911296513387599215521971145*c77*c99 + 96.0*c79 + c85*c94 + c87*c88 + c97*c98 - 5.628299683035236292320179195*c98*c99]
}

/// `[s, s_x, s_y, laplacian s]`
#[allow(clippy::all, unused_parens)]
pub(crate) fn moment_profile(x: f64, y: f64, r: f64, phi: f64) -> [f64; 4] {
    let c0 = y.powi(2);
    let c1 = c0 - 1.0;
    let c2 = (2_f64/3.0)*phi + (1_f64/3.0)*PI;
    let c3 = c2.sin();
    let c4 = c1*c3;
    let c5 = r.powf(0.666666666666666666666666666667);
    let c6 = x.powi(2);
    let c7 = c6 - 1.0;
    let c8 = c5*c7;
    let c9 = 2.0*c4*c5;
    let c10 = r.powf(-1.33333333333333333333333333333);
    let c11 = c10*c4;
    let c12 = c11*c7;
    let c13 = 0.666666666666666666666666666667*x;
    let c14 = 0.666666666666666666666666666667*y;
    let c15 = c2.cos();
    let c16 = c10*c7;
    let c17 = c1*c15*c16;
    let c18 = 2.0*c3*c8;
    let c19 = 2.66666666666666666666666666667*c16;
    let c20 = c15*x*y;
    let c21 = 1.33333333333333333333333333333*c4*c7*r.powf(-3.33333333333333333333333333333);
    [c4*c8, c12*c13 - c14*c17 + c9*x, c12*c14 + c13*c17 + c18*y, c0*c19*c3 - c0*c21 - 2.66666666666666666666666666667*c1*c10*c20 + 2.66666666666666666666666666667*c11*c6 + 1.33333333333333333333333333333*c12 + c18 + c19*c20 - c21*c6 + c9]
}
